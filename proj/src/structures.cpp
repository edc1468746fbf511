#include "pjcalc/structures.hpp"

#include <optional>
#include <sstream>

namespace pj {

PoissonCheck is_poisson(const Multivector& lambda) {
    if (lambda.degree() != 2) throw error("is_poisson: degree 2 required");
    Multivector obstruction = sn_bracket(lambda, lambda);
    return {obstruction.is_zero(), std::move(obstruction)};
}

JacobiCheck is_jacobi(const FirstOrderOp& d) {
    if (d.degree() != 2) throw error("is_jacobi: degree 2 required");
    FirstOrderOp obstruction = sj_bracket(d, d);
    return {obstruction.is_zero(), std::move(obstruction)};
}

namespace {

std::string render_scalar(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : s.terms()) {
        if (!first) out << " + ";
        first = false;
        out << c.str();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out << " " << s.chart()->variables()[i];
            if (e[i] != 1) out << "^" << e[i];
        }
    }
    return out.str();
}

std::string render_tuple(const std::vector<Scalar>& fs) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) out << ", ";
        out << render_scalar(fs[i]);
    }
    out << ")";
    return out.str();
}

template <class Obj, class BracketScalar, class BracketSelf, class IsZero>
NambuReport nambu_impl(const Obj& p, int arity, std::vector<Scalar> family,
                       BracketScalar&& with_scalar, BracketSelf&& with_self, IsZero&& is_zero) {
    if (arity < 2) throw error("nambu_check: degree >= 2 required");
    const int slots = arity - 1;
    std::vector<std::size_t> pick(static_cast<std::size_t>(slots), 0);
    while (true) {
        std::vector<Scalar> fs;
        for (std::size_t idx : pick) fs.push_back(family[idx]);
        Obj acc = p;
        for (const auto& f : fs) acc = with_scalar(acc, f);
        if (!is_zero(with_self(acc, p)))
            return {false, "fundamental identity fails on " + render_tuple(fs)};
        // next ordered tuple with repetition
        int i = slots - 1;
        while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == family.size())
            pick[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return {true, ""};
}

} // namespace

std::vector<Scalar> default_nambu_family(const ChartPtr& chart) {
    std::vector<Scalar> family;
    for (const auto& v : chart->variables()) family.push_back(Scalar::variable(chart, v));
    std::size_t n = family.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            family.push_back(family[i] * family[j]);
    return family;
}

NambuReport nambu_check(const Multivector& p, const std::vector<Scalar>& family) {
    auto fam = family.empty() ? default_nambu_family(p.chart()) : family;
    return nambu_impl(
        p, p.degree(), std::move(fam),
        [](const Multivector& a, const Scalar& f) {
            return sn_bracket(a, Multivector::from_scalar(f));
        },
        [](const Multivector& a, const Multivector& b) { return sn_bracket(a, b); },
        [](const Multivector& a) { return a.is_zero(); });
}

NambuReport nambu_check(const FirstOrderOp& d, const std::vector<Scalar>& family) {
    auto fam = family.empty() ? default_nambu_family(d.chart()) : family;
    return nambu_impl(
        d, d.degree(), std::move(fam),
        [](const FirstOrderOp& a, const Scalar& f) {
            return sj_bracket(a, FirstOrderOp::from_scalar(f));
        },
        [](const FirstOrderOp& a, const FirstOrderOp& b) { return sj_bracket(a, b); },
        [](const FirstOrderOp& a) { return a.is_zero(); });
}

namespace {

using Mat = std::vector<std::vector<Scalar>>;

Scalar det(const Mat& m) {
    std::size_t n = m.size();
    if (n == 0) throw error("det: empty matrix");
    if (n == 1) return m[0][0];
    Scalar r = Scalar::zero(m[0][0].chart());
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        Mat minor;
        minor.reserve(n - 1);
        for (std::size_t a = 0; a < n; ++a) {
            if (a == i) continue;
            std::vector<Scalar> row;
            row.reserve(n - 1);
            for (std::size_t b = 1; b < n; ++b) row.push_back(m[a][b]);
            minor.push_back(std::move(row));
        }
        Scalar part = m[i][0] * det(minor);
        r = (i % 2 == 0) ? r + part : r - part;
    }
    return r;
}

Mat minor_matrix(const Mat& m, std::size_t row, std::size_t col) {
    Mat r;
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (a == row) continue;
        std::vector<Scalar> line;
        for (std::size_t b = 0; b < m.size(); ++b)
            if (b != col) line.push_back(m[a][b]);
        r.push_back(std::move(line));
    }
    return r;
}

// Solves A x = b over the Laurent ring via the adjugate; requires det(A)
// to be a unit (a single monomial). Returns nothing when it is not.
std::optional<std::vector<Scalar>> solve_unit(const Mat& a, const std::vector<Scalar>& b) {
    std::size_t n = a.size();
    Scalar d = det(a);
    if (d.is_zero() || !d.is_monomial()) return std::nullopt;
    Scalar d_inv = d.pow(-1);
    std::vector<Scalar> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar acc = Scalar::zero(d.chart());
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            // adj(A)[i][j] = (-1)^{i+j} det(minor(j, i))
            Scalar cof = (n == 1) ? Scalar::one(d.chart()) : det(minor_matrix(a, j, i));
            Scalar part = cof * b[j];
            acc = ((i + j) % 2 == 0) ? acc + part : acc - part;
        }
        x.push_back(acc * d_inv);
    }
    return x;
}

Mat form2_matrix(const DiffForm& omega) {
    std::size_t n = omega.chart()->dim();
    Mat w(n, std::vector<Scalar>(n, Scalar::zero(omega.chart())));
    for (const auto& [k, c] : omega.terms()) {
        w[static_cast<std::size_t>(k[0])][static_cast<std::size_t>(k[1])] = c;
        w[static_cast<std::size_t>(k[1])][static_cast<std::size_t>(k[0])] = -c;
    }
    return w;
}

} // namespace

Multivector invert_symplectic(const DiffForm& omega) {
    if (omega.degree() != 2) throw error("invert_symplectic: degree 2 required");
    const ChartPtr& chart = omega.chart();
    std::size_t n = chart->dim();
    Mat w = form2_matrix(omega);
    Scalar d = det(w);
    if (d.is_zero() || !d.is_monomial())
        throw error("invert_symplectic: not invertible over the Laurent ring (determinant is not a unit)");
    Scalar d_inv = d.pow(-1);
    // Lambda's matrix is -W^{-1}; the sign makes invert(dq^dp) = @q^@p.
    Multivector lambda(chart, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // (W^{-1})[i][j] = (-1)^{i+j} det(minor(j, i)) / det
            Scalar cof = (n == 1) ? Scalar::one(chart) : det(minor_matrix(w, j, i));
            Scalar entry = cof * d_inv;
            if ((i + j) % 2 != 0) entry = -entry;
            lambda.add_term({static_cast<int>(i), static_cast<int>(j)}, -entry);
        }
    }
    return lambda;
}

Multivector hamiltonian_poisson(const Multivector& lambda, const Scalar& f) {
    if (lambda.degree() != 2) throw error("hamiltonian_poisson: degree 2 required");
    // df contracts the second slot, so that @q^@p and f = (q^2+p^2)/2 give
    // the rotation field p @q - q @p.
    return -interior(differential(f), lambda);
}

ContactData contact_reduce(const DiffForm& omega, const HomogeneousSetup& setup) {
    if (omega.degree() != 2) throw error("contact_reduce: degree 2 required");
    DegreeResult dr = homogeneity_degree(omega, setup.delta);
    if (!(dr.is(DegreeResult::Kind::Homogeneous) && dr.degree == Rational(1)))
        throw error("contact_reduce: form is not delta-homogeneous of degree 1");
    (void)invert_symplectic(omega); // symplectic over the ring, or throws

    ReducedPair rp = psi_N(omega, setup);
    DiffForm eta = rp.pair.a1;
    DiffForm d_eta = exterior_derivative(eta);
    if (d_eta != rp.pair.a0)
        throw error("contact_reduce: d eta != j* omega (reduction identity failed)");

    const ChartPtr& slice = setup.slice;
    std::size_t n = slice->dim();
    if (n % 2 == 0) throw error("contact_reduce: slice dimension must be odd");
    std::size_t m = (n - 1) / 2;
    DiffForm witness = DiffForm::from_scalar(Scalar::one(slice));
    for (std::size_t i = 0; i < m; ++i) witness = wedge(witness, d_eta);
    witness = wedge(witness, eta);
    if (witness.is_zero()) throw error("contact_reduce: contact condition degenerate");

    // Reeb field: i_Gamma d eta = 0 (n equations) and <eta, Gamma> = 1,
    // solved by picking a square subsystem with unit determinant and then
    // verifying the full overdetermined system.
    Mat rows(n + 1, std::vector<Scalar>(n, Scalar::zero(slice)));
    std::vector<Scalar> rhs(n + 1, Scalar::zero(slice));
    for (std::size_t i = 0; i < n; ++i) {
        Multivector ei(slice, 1);
        ei.add_term({static_cast<int>(i)}, Scalar::one(slice));
        DiffForm col = interior(ei, d_eta);
        for (const auto& [k, c] : col.terms())
            rows[static_cast<std::size_t>(k[0])][i] = c;
        auto et = eta.terms().find({static_cast<int>(i)});
        rows[n][i] = et == eta.terms().end() ? Scalar::zero(slice) : et->second;
    }
    rhs[n] = Scalar::one(slice);

    std::optional<std::vector<Scalar>> solution;
    for (std::size_t skip = 0; skip < n + 1 && !solution; ++skip) {
        if (skip == 0) continue; // the <eta, .> = 1 row is always needed
        Mat sub;
        std::vector<Scalar> subrhs;
        for (std::size_t r = 0; r < n + 1; ++r) {
            if (r == skip - 1) continue;
            sub.push_back(rows[r]);
            subrhs.push_back(rhs[r]);
        }
        auto x = solve_unit(sub, subrhs);
        if (!x) continue;
        bool all_ok = true;
        for (std::size_t r = 0; r < n + 1 && all_ok; ++r) {
            Scalar acc = Scalar::zero(slice);
            for (std::size_t cidx = 0; cidx < n; ++cidx) acc = acc + rows[r][cidx] * (*x)[cidx];
            all_ok = (acc == rhs[r]);
        }
        if (all_ok) solution = x;
    }
    if (!solution) throw error("contact_reduce: Reeb system not solvable over the ring");

    Multivector reeb(slice, 1);
    for (std::size_t i = 0; i < n; ++i)
        reeb.add_term({static_cast<int>(i)}, (*solution)[i]);
    return {std::move(eta), std::move(d_eta), std::move(reeb), std::move(witness)};
}

DiffForm contact_flat(const ContactData& cd, const Multivector& x) {
    if (x.degree() != 1) throw error("contact_flat: degree 1 required");
    DiffForm r = cd.eta * pairing(x, cd.eta) - interior(x, cd.d_eta);
    return r.is_zero() ? DiffForm::zero(cd.eta.chart(), 1) : r;
}

Multivector contact_hamiltonian(const ContactData& cd, const Scalar& f) {
    const ChartPtr& chart = cd.eta.chart();
    std::size_t n = chart->dim();
    Scalar gamma_f = apply_vector(cd.reeb, f);
    DiffForm rhs_form = differential(f) - cd.eta * gamma_f + cd.eta * f;

    Mat b(n, std::vector<Scalar>(n, Scalar::zero(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        Multivector ei(chart, 1);
        ei.add_term({static_cast<int>(i)}, Scalar::one(chart));
        DiffForm col = contact_flat(cd, ei);
        for (const auto& [k, c] : col.terms())
            b[static_cast<std::size_t>(k[0])][i] = c;
    }
    std::vector<Scalar> rhs(n, Scalar::zero(chart));
    for (const auto& [k, c] : rhs_form.terms()) rhs[static_cast<std::size_t>(k[0])] = c;

    auto x = solve_unit(b, rhs);
    if (!x) throw error("contact_hamiltonian: flat map not invertible over the ring");
    Multivector h(chart, 1);
    for (std::size_t i = 0; i < n; ++i) h.add_term({static_cast<int>(i)}, (*x)[i]);
    return h;
}

Scalar contact_bracket(const ContactData& cd, const Scalar& f, const Scalar& g) {
    Multivector hf = contact_hamiltonian(cd, f);
    return apply_vector(hf, g) - g * apply_vector(cd.reeb, f);
}

} // namespace pj
