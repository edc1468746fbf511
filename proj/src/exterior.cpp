#include "pjcalc/exterior.hpp"

#include <variant>

namespace pj {

template <Variance V>
Tensor<V> wedge(const Tensor<V>& a, const Tensor<V>& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    int deg = a.degree() + b.degree();
    if (deg < -1) deg = -1;
    Tensor<V> r(a.chart(), deg);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            typename Tensor<V>::Key key = ka;
            key.insert(key.end(), kb.begin(), kb.end());
            r.add_unsorted(std::move(key), ca * cb);
        }
    }
    return r;
}

template Multivector wedge(const Multivector&, const Multivector&);
template DiffForm wedge(const DiffForm&, const DiffForm&);

namespace {

template <Variance VD, Variance VT>
Tensor<VT> interior_impl(const Tensor<VD>& x, const Tensor<VT>& t) {
    require_same_chart(x.chart(), t.chart(), "interior product");
    if (x.degree() != 1) throw error("interior product: contracting tensor must have degree 1");
    int deg = t.degree() - 1;
    if (deg < -1) deg = -1;
    Tensor<VT> r(t.chart(), deg);
    if (t.degree() <= 0) return r;
    for (const auto& [kx, cx] : x.terms()) {
        int idx = kx[0];
        for (const auto& [kt, ct] : t.terms()) {
            for (std::size_t m = 0; m < kt.size(); ++m) {
                if (kt[m] != idx) continue;
                typename Tensor<VT>::Key key;
                key.reserve(kt.size() - 1);
                for (std::size_t j = 0; j < kt.size(); ++j)
                    if (j != m) key.push_back(kt[j]);
                Scalar c = cx * ct;
                if (m % 2 == 1) c = -c; // (-1)^{m+1} with 1-based m
                r.add_term(key, c);
                break;
            }
        }
    }
    return r;
}

} // namespace

DiffForm interior(const Multivector& x, const DiffForm& t) { return interior_impl(x, t); }
Multivector interior(const DiffForm& phi, const Multivector& t) { return interior_impl(phi, t); }

Scalar pairing(const Multivector& p, const DiffForm& a) {
    require_same_chart(p.chart(), a.chart(), "pairing");
    if (p.degree() != a.degree()) throw error("pairing: degree mismatch");
    Scalar r = Scalar::zero(p.chart());
    auto it = p.terms().begin();
    auto jt = a.terms().begin();
    while (it != p.terms().end() && jt != a.terms().end()) {
        if (it->first < jt->first) ++it;
        else if (jt->first < it->first) ++jt;
        else { r = r + it->second * jt->second; ++it; ++jt; }
    }
    return r;
}

DiffForm differential(const Scalar& f) {
    DiffForm r(f.chart(), 1);
    for (std::size_t v = 0; v < f.chart()->dim(); ++v) {
        Scalar df = f.derivative(static_cast<int>(v));
        if (!df.is_zero()) r.add_term({static_cast<int>(v)}, df);
    }
    return r;
}

DiffForm exterior_derivative(const DiffForm& a) {
    DiffForm r(a.chart(), a.degree() + 1);
    for (const auto& [k, c] : a.terms()) {
        for (std::size_t v = 0; v < a.chart()->dim(); ++v) {
            Scalar dc = c.derivative(static_cast<int>(v));
            if (dc.is_zero()) continue;
            DiffForm::Key key;
            key.reserve(k.size() + 1);
            key.push_back(static_cast<int>(v));
            key.insert(key.end(), k.begin(), k.end());
            r.add_unsorted(std::move(key), std::move(dc));
        }
    }
    return r;
}

Scalar apply_vector(const Multivector& x, const Scalar& f) {
    require_same_chart(x.chart(), f.chart(), "vector field application");
    if (x.degree() != 1) throw error("vector field application: degree 1 required");
    Scalar r = Scalar::zero(f.chart());
    for (const auto& [k, c] : x.terms()) r = r + c * f.derivative(k[0]);
    return r;
}

namespace {

// One factor of a decomposable multivector: either a function or a
// coordinate vector field @i.
using Atom = std::variant<Scalar, int>;

int atom_degree(const Atom& a) { return std::holds_alternative<int>(a) ? 1 : 0; }

int list_degree(const std::vector<Atom>& l) {
    int d = 0;
    for (const auto& a : l) d += atom_degree(a);
    return d;
}

Multivector atoms_to_mv(const ChartPtr& chart, const std::vector<Atom>& l) {
    Multivector r = Multivector::from_scalar(Scalar::one(chart));
    for (const auto& a : l) {
        if (const Scalar* s = std::get_if<Scalar>(&a)) {
            r = r * *s;
        } else {
            Multivector b(chart, 1);
            b.add_term({std::get<int>(a)}, Scalar::one(chart));
            r = wedge(r, b);
        }
    }
    return r;
}

// Recursive graded-Leibniz expansion. Anchors: [[X,f]] = X(f), coordinate
// fields commute, [[f,g]] = 0; everything else peels wedge factors with
// axiom iii or flips with graded antisymmetry (axiom ii).
Multivector sn_atoms(const ChartPtr& chart, const std::vector<Atom>& a, const std::vector<Atom>& b) {
    int p = list_degree(a);
    if (a.size() == 1 && b.size() == 1) {
        const Atom& x = a[0];
        const Atom& y = b[0];
        if (atom_degree(x) == 0 && atom_degree(y) == 0)
            return Multivector::zero(chart, -1);
        if (atom_degree(x) == 1 && atom_degree(y) == 0)
            return Multivector::from_scalar(std::get<Scalar>(y).derivative(std::get<int>(x)));
        if (atom_degree(x) == 0 && atom_degree(y) == 1)
            return Multivector::from_scalar(-std::get<Scalar>(x).derivative(std::get<int>(y)));
        return Multivector::zero(chart, 1); // [@i, @j] = 0
    }
    if (b.size() >= 2) {
        // [[A, b ^ R]] = [[A, b]] ^ R + (-1)^{(p-1) deg b} b ^ [[A, R]]
        std::vector<Atom> head{b[0]};
        std::vector<Atom> rest(b.begin() + 1, b.end());
        Multivector first = wedge(sn_atoms(chart, a, head), atoms_to_mv(chart, rest));
        Multivector second = wedge(atoms_to_mv(chart, head), sn_atoms(chart, a, rest));
        if (((p - 1) * atom_degree(b[0])) % 2 != 0) second = -second;
        return first + second;
    }
    // b is a single atom, a has >= 2 factors: flip with axiom ii.
    int q = list_degree(b);
    Multivector flipped = sn_atoms(chart, b, a);
    if (((p - 1) * (q - 1)) % 2 == 0) flipped = -flipped;
    return flipped;
}

std::vector<Atom> term_atoms(const Multivector::Key& key, const Scalar& coeff) {
    std::vector<Atom> l;
    l.reserve(key.size() + 1);
    l.emplace_back(coeff);
    for (int i : key) l.emplace_back(i);
    return l;
}

} // namespace

Multivector sn_bracket(const Multivector& p, const Multivector& q) {
    require_same_chart(p.chart(), q.chart(), "sn_bracket");
    int deg = p.degree() + q.degree() - 1;
    if (p.degree() == 0 && q.degree() == 0) deg = 0; // [[f,g]] = 0, reported in degree 0
    if (deg < -1) deg = -1;
    Multivector r(p.chart(), deg);
    if (p.is_zero() || q.is_zero()) return r;
    for (const auto& [ka, ca] : p.terms())
        for (const auto& [kb, cb] : q.terms()) {
            Multivector part = sn_atoms(p.chart(), term_atoms(ka, ca), term_atoms(kb, cb));
            if (part.is_zero()) continue;
            for (const auto& [k, c] : part.terms()) r.add_term(k, c);
        }
    return r;
}

Multivector lie_derivative(const Multivector& x, const Multivector& t) {
    if (x.degree() != 1) throw error("lie_derivative: first argument must have degree 1");
    return sn_bracket(x, t);
}

DiffForm lie_derivative(const Multivector& x, const DiffForm& t) {
    if (x.degree() != 1) throw error("lie_derivative: first argument must have degree 1");
    if (t.degree() == 0) return DiffForm::from_scalar(apply_vector(x, t.to_scalar()));
    return interior(x, exterior_derivative(t)) + exterior_derivative(interior(x, t));
}

Scalar lie_derivative(const Multivector& x, const Scalar& f) { return apply_vector(x, f); }

Scalar bracket_of_functions(const Multivector& p, const std::vector<Scalar>& fs) {
    if (static_cast<int>(fs.size()) != p.degree())
        throw error("bracket_of_functions: arity mismatch");
    DiffForm a = DiffForm::from_scalar(Scalar::one(p.chart()));
    for (const auto& f : fs) a = wedge(a, differential(f));
    return pairing(p, a);
}

namespace {

std::vector<int> slice_index_map(const ChartPtr& chart, int t_index) {
    std::vector<int> m(chart->dim());
    for (std::size_t i = 0; i < chart->dim(); ++i) {
        int ii = static_cast<int>(i);
        m[i] = (ii == t_index) ? -1 : (ii < t_index ? ii : ii - 1);
    }
    return m;
}

} // namespace

ChartPtr slice_chart(const Chart& chart) {
    int t = chart.homogeneity_index();
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < chart.dim(); ++i)
        if (static_cast<int>(i) != t) vars.push_back(chart.variables()[i]);
    return make_chart(std::move(vars));
}

Multivector restrict_to_slice(const Multivector& t, int t_index, const ChartPtr& slice) {
    auto imap = slice_index_map(t.chart(), t_index);
    Multivector r(slice, t.degree());
    for (const auto& [k, c] : t.terms()) {
        Multivector::Key key;
        key.reserve(k.size());
        for (int i : k) {
            if (i == t_index)
                throw error("restrict: multivector not tangent to the slice foliation (has a @" +
                            t.chart()->variables()[static_cast<std::size_t>(t_index)] + " component)");
            key.push_back(imap[static_cast<std::size_t>(i)]);
        }
        r.add_term(key, c.specialize(t_index, Rational(1)).transplant(slice, imap));
    }
    return r;
}

DiffForm restrict_to_slice(const DiffForm& t, int t_index, const ChartPtr& slice) {
    auto imap = slice_index_map(t.chart(), t_index);
    DiffForm r(slice, t.degree());
    for (const auto& [k, c] : t.terms()) {
        bool has_dt = false;
        DiffForm::Key key;
        key.reserve(k.size());
        for (int i : k) {
            if (i == t_index) { has_dt = true; break; }
            key.push_back(imap[static_cast<std::size_t>(i)]);
        }
        if (has_dt) continue; // pullback kills dt
        r.add_term(key, c.specialize(t_index, Rational(1)).transplant(slice, imap));
    }
    return r;
}

template <Variance V>
Tensor<V> eval_at_point(const Tensor<V>& t, const Point& p) {
    Tensor<V> r(t.chart(), t.degree());
    for (const auto& [k, c] : t.terms())
        r.add_term(k, Scalar::constant(t.chart(), c.evaluate(p)));
    return r;
}

template Multivector eval_at_point(const Multivector&, const Point&);
template DiffForm eval_at_point(const DiffForm&, const Point&);

} // namespace pj
