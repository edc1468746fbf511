#include "pjcalc/homogeneity.hpp"

#include <sstream>

namespace pj {

namespace {

Multivector product_delta(const ChartPtr& chart, int t_index) {
    Multivector d(chart, 1);
    Scalar t = Scalar::variable(chart, chart->variables()[static_cast<std::size_t>(t_index)]);
    d.add_term({t_index}, t);
    return d;
}

void validate_setup(const HomogeneousSetup& s) {
    if (s.delta.degree() != 1) throw error("setup: delta must have degree 1");
    require_same_chart(s.delta.chart(), s.chart, "setup");
    // Transversality: the @t coefficient of delta must not vanish on {t=1}.
    Scalar coeff = Scalar::zero(s.chart);
    auto it = s.delta.terms().find({s.t_index});
    if (it != s.delta.terms().end()) coeff = it->second;
    if (coeff.specialize(s.t_index, Rational(1)).is_zero())
        throw error("setup: delta is not transversal to the slice {t=1}");
    // 1~ = t must be delta-homogeneous of degree 1.
    if (apply_vector(s.delta, s.one_tilde) != s.one_tilde)
        throw error("setup: t is not delta-homogeneous of degree 1");
}

} // namespace

HomogeneousSetup HomogeneousSetup::product(const ChartPtr& chart) {
    int t_index = chart->homogeneity_index();
    HomogeneousSetup s{chart, t_index, product_delta(chart, t_index),
                       Scalar::variable(chart, chart->variables()[static_cast<std::size_t>(t_index)]),
                       slice_chart(*chart)};
    validate_setup(s);
    return s;
}

HomogeneousSetup HomogeneousSetup::with_delta(const ChartPtr& chart, Multivector delta) {
    int t_index = chart->homogeneity_index();
    HomogeneousSetup s{chart, t_index, std::move(delta),
                       Scalar::variable(chart, chart->variables()[static_cast<std::size_t>(t_index)]),
                       slice_chart(*chart)};
    validate_setup(s);
    return s;
}

bool HomogeneousSetup::delta_is_product() const {
    return delta == product_delta(chart, t_index);
}

DegreeResult homogeneity_degree(const Scalar& f, const Multivector& delta) {
    if (f.is_zero()) return DegreeResult::zero();
    Scalar lie = apply_vector(delta, f);
    if (lie.is_zero()) return DegreeResult::homogeneous(Rational(0));
    const auto& [e, c] = *f.terms().begin();
    auto it = lie.terms().find(e);
    if (it == lie.terms().end()) return DegreeResult::not_homogeneous();
    Rational n = it->second / c;
    if ((lie - f * n).is_zero()) return DegreeResult::homogeneous(std::move(n));
    return DegreeResult::not_homogeneous();
}

namespace {

template <Variance V>
DegreeResult tensor_degree(const Tensor<V>& t, const Multivector& delta) {
    if (t.is_zero()) return DegreeResult::zero();
    Tensor<V> lie = lie_derivative(delta, t);
    if (lie.is_zero()) return DegreeResult::homogeneous(Rational(0));
    const auto& [key, coeff] = *t.terms().begin();
    auto kt = lie.terms().find(key);
    if (kt == lie.terms().end()) return DegreeResult::not_homogeneous();
    const auto& [e, c] = *coeff.terms().begin();
    auto et = kt->second.terms().find(e);
    if (et == kt->second.terms().end()) return DegreeResult::not_homogeneous();
    Rational n = et->second / c;
    if ((lie - t * n).is_zero()) return DegreeResult::homogeneous(std::move(n));
    return DegreeResult::not_homogeneous();
}

} // namespace

DegreeResult homogeneity_degree(const Multivector& t, const Multivector& delta) {
    return tensor_degree(t, delta);
}

DegreeResult homogeneity_degree(const DiffForm& t, const Multivector& delta) {
    return tensor_degree(t, delta);
}

DegreeResult homogeneity_degree(const FirstOrderOp& d, const Multivector& delta) {
    // [[Delta, D]]^1 = n D iff both components have Lie derivative n times themselves.
    DegreeResult r0 = tensor_degree(d.d0, delta);
    DegreeResult r1 = tensor_degree(d.d1, delta);
    using K = DegreeResult::Kind;
    if (r0.is(K::ZeroTensor)) return r1;
    if (r1.is(K::ZeroTensor)) return r0;
    if (r0.is(K::Homogeneous) && r1.is(K::Homogeneous) && r0.degree == r1.degree) return r0;
    return DegreeResult::not_homogeneous();
}

namespace {

struct GradedFn {
    Scalar f;
    Rational deg;
    std::string name;
};

std::vector<GradedFn> generator_family(const HomogeneousSetup& s, bool include_degree0) {
    const auto& chart = s.chart;
    Scalar t = s.one_tilde;
    std::vector<GradedFn> gens;
    if (include_degree0) {
        gens.push_back({Scalar::one(chart), Rational(0), "1"});
        for (std::size_t i = 0; i < chart->dim(); ++i)
            if (static_cast<int>(i) != s.t_index)
                gens.push_back({Scalar::variable(chart, chart->variables()[i]), Rational(0),
                                chart->variables()[i]});
    }
    gens.push_back({t, Rational(1), chart->variables()[static_cast<std::size_t>(s.t_index)]});
    for (std::size_t i = 0; i < chart->dim(); ++i)
        if (static_cast<int>(i) != s.t_index)
            gens.push_back({t * Scalar::variable(chart, chart->variables()[i]), Rational(1),
                            "t*" + chart->variables()[i]});
    // Pairwise products, with their degrees (Corollary-style product closure).
    std::vector<GradedFn> family = gens;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j)
            family.push_back({gens[i].f * gens[j].f, gens[i].deg + gens[j].deg,
                              gens[i].name + "*" + gens[j].name});
    return family;
}

template <class BracketFn>
BracketDegreeReport bracket_degree_impl(int arity, const HomogeneousSetup& setup,
                                        const std::vector<GradedFn>& family, BracketFn&& bracket) {
    BracketDegreeReport report;
    std::optional<Rational> implied;
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    bool done = arity == 0;
    // Combinations with repetition over the family.
    auto advance = [&]() {
        int i = arity - 1;
        while (i >= 0) {
            if (++pick[static_cast<std::size_t>(i)] < family.size()) {
                for (std::size_t j = static_cast<std::size_t>(i) + 1; j < pick.size(); ++j)
                    pick[j] = pick[static_cast<std::size_t>(i)];
                return true;
            }
            --i;
        }
        return false;
    };
    while (true) {
        std::vector<Scalar> fs;
        Rational total(0);
        std::ostringstream names;
        for (std::size_t idx : pick) {
            fs.push_back(family[idx].f);
            total += family[idx].deg;
            names << " " << family[idx].name;
        }
        Scalar g = bracket(fs);
        DegreeResult dr = homogeneity_degree(g, setup.delta);
        if (dr.is(DegreeResult::Kind::NotHomogeneous)) {
            report.consistent = false;
            report.detail = "bracket of{" + names.str() + " } is not homogeneous";
            return report;
        }
        if (dr.is(DegreeResult::Kind::Homogeneous)) {
            Rational n = dr.degree - total;
            if (implied && *implied != n) {
                report.consistent = false;
                report.detail = "bracket of{" + names.str() + " } implies degree " + to_string(n) +
                                ", conflicting with " + to_string(*implied);
                return report;
            }
            implied = n;
        }
        if (done || !advance()) break;
        if (arity == 0) break;
    }
    report.consistent = true;
    report.degree = implied;
    return report;
}

} // namespace

BracketDegreeReport degree_via_brackets(const Multivector& p, const HomogeneousSetup& setup) {
    require_same_chart(p.chart(), setup.chart, "degree_via_brackets");
    auto family = generator_family(setup, /*include_degree0=*/false);
    return bracket_degree_impl(p.degree(), setup, family,
                               [&](const std::vector<Scalar>& fs) { return bracket_of_functions(p, fs); });
}

BracketDegreeReport degree_via_brackets(const FirstOrderOp& d, const HomogeneousSetup& setup) {
    require_same_chart(d.chart(), setup.chart, "degree_via_brackets");
    auto family = generator_family(setup, /*include_degree0=*/true);
    return bracket_degree_impl(d.degree(), setup, family,
                               [&](const std::vector<Scalar>& fs) { return op_on_functions(d, fs); });
}

DeltaDecomposition decompose_along_delta(const Multivector& p, const HomogeneousSetup& setup) {
    require_same_chart(p.chart(), setup.chart, "decompose_along_delta");
    if (!setup.delta_is_product())
        throw error("decompose_along_delta: delta must be in product form t @t");
    const int k = p.degree();
    Multivector p0(setup.chart, k);
    Multivector p1(setup.chart, k - 1 < -1 ? -1 : k - 1);
    Scalar t_inv = Scalar::variable(setup.chart,
                                    setup.chart->variables()[static_cast<std::size_t>(setup.t_index)], -1);
    for (const auto& [key, c] : p.terms()) {
        auto it = std::find(key.begin(), key.end(), setup.t_index);
        if (it == key.end()) {
            p0.add_term(key, c);
            continue;
        }
        // c @..^@t^.. = sign * c @t ^ rest = (t @t) ^ (sign * c / t * rest)
        std::size_t m = static_cast<std::size_t>(it - key.begin());
        Multivector::Key rest;
        rest.reserve(key.size() - 1);
        for (std::size_t j = 0; j < key.size(); ++j)
            if (j != m) rest.push_back(key[j]);
        Scalar coeff = c * t_inv;
        if (m % 2 == 1) coeff = -coeff;
        p1.add_term(rest, coeff);
    }
    return {std::move(p0), std::move(p1)};
}

ReducedOp reduce_J(const Multivector& p, const HomogeneousSetup& setup) {
    DeltaDecomposition d = decompose_along_delta(p, setup);
    DegreeResult dr = homogeneity_degree(p, setup.delta);
    bool homog = dr.is(DegreeResult::Kind::ZeroTensor) ||
                 (dr.is(DegreeResult::Kind::Homogeneous) && dr.degree == Rational(1 - p.degree()));
    return {FirstOrderOp(std::move(d.p0), std::move(d.p1)), homog};
}

ReducedOp reduce_JN(const Multivector& p, const HomogeneousSetup& setup) {
    ReducedOp j = reduce_J(p, setup);
    Multivector d0 = restrict_to_slice(j.op.d0, setup.t_index, setup.slice);
    Multivector d1 = j.op.d1.degree() < 0 ? Multivector::zero(setup.slice, -1)
                                          : restrict_to_slice(j.op.d1, setup.t_index, setup.slice);
    return {FirstOrderOp(std::move(d0), std::move(d1)), j.homogeneous};
}

namespace {

std::vector<int> product_index_map(const HomogeneousSetup& s) {
    std::vector<int> m(s.slice->dim());
    for (std::size_t i = 0; i < s.slice->dim(); ++i) {
        int ii = static_cast<int>(i);
        m[i] = ii < s.t_index ? ii : ii + 1;
    }
    return m;
}

template <Variance V>
Tensor<V> extend_tensor(const Tensor<V>& t, const HomogeneousSetup& s) {
    require_same_chart(t.chart(), s.slice, "extend_to_product");
    auto imap = product_index_map(s);
    Tensor<V> r(s.chart, t.degree());
    for (const auto& [key, c] : t.terms()) {
        typename Tensor<V>::Key k;
        k.reserve(key.size());
        for (int i : key) k.push_back(imap[static_cast<std::size_t>(i)]);
        r.add_term(k, c.transplant(s.chart, imap));
    }
    return r;
}

} // namespace

Scalar extend_to_product(const Scalar& f, const HomogeneousSetup& setup) {
    require_same_chart(f.chart(), setup.slice, "extend_to_product");
    return f.transplant(setup.chart, product_index_map(setup));
}

Multivector extend_to_product(const Multivector& t, const HomogeneousSetup& setup) {
    return extend_tensor(t, setup);
}

DiffForm extend_to_product(const DiffForm& t, const HomogeneousSetup& setup) {
    return extend_tensor(t, setup);
}

Multivector poissonize(const FirstOrderOp& d_on_slice, const HomogeneousSetup& setup) {
    if (!setup.delta_is_product())
        throw error("poissonize: delta must be in product form t @t");
    const int k = d_on_slice.degree();
    Multivector p0 = extend_to_product(d_on_slice.d0, setup);
    Multivector sum = p0;
    if (d_on_slice.d1.degree() >= 0) {
        Multivector p1 = extend_to_product(d_on_slice.d1, setup);
        sum = sum + wedge(setup.delta, p1);
    }
    Scalar tpow = setup.one_tilde.pow(1 - k);
    Multivector r = sum * tpow;
    return r.is_zero() ? Multivector::zero(setup.chart, k) : r;
}

ReducedPair psi(const DiffForm& a, const HomogeneousSetup& setup) {
    require_same_chart(a.chart(), setup.chart, "psi");
    if (!setup.delta_is_product()) throw error("psi: delta must be in product form t @t");
    const int k = a.degree();
    Scalar t_inv = setup.one_tilde.pow(-1);
    DiffForm a1 = interior(setup.delta, a) * t_inv;
    DiffForm dlnt = differential(setup.one_tilde) * t_inv;
    DiffForm a0 = a * t_inv - wedge(dlnt, a1);
    if (a0.is_zero()) a0 = DiffForm::zero(setup.chart, k);
    if (a1.is_zero()) a1 = DiffForm::zero(setup.chart, k - 1 < -1 ? -1 : k - 1);
    DegreeResult dr = homogeneity_degree(a, setup.delta);
    bool homog = dr.is(DegreeResult::Kind::ZeroTensor) ||
                 (dr.is(DegreeResult::Kind::Homogeneous) && dr.degree == Rational(1));
    return {FormPair(std::move(a0), std::move(a1)), homog};
}

ReducedPair psi_N(const DiffForm& a, const HomogeneousSetup& setup) {
    require_same_chart(a.chart(), setup.chart, "psi_N");
    const int k = a.degree();
    DiffForm a0 = restrict_to_slice(a, setup.t_index, setup.slice);
    DiffForm contracted = interior(setup.delta, a);
    DiffForm a1 = contracted.degree() < 0 ? DiffForm::zero(setup.slice, -1)
                                          : restrict_to_slice(contracted, setup.t_index, setup.slice);
    if (a0.is_zero()) a0 = DiffForm::zero(setup.slice, k);
    DegreeResult dr = homogeneity_degree(a, setup.delta);
    bool homog = dr.is(DegreeResult::Kind::ZeroTensor) ||
                 (dr.is(DegreeResult::Kind::Homogeneous) && dr.degree == Rational(1));
    return {FormPair(std::move(a0), std::move(a1)), homog};
}

} // namespace pj
