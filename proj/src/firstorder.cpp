#include "pjcalc/firstorder.hpp"

#include <algorithm>

namespace pj {

FirstOrderOp sj_bracket(const FirstOrderOp& p, const FirstOrderOp& q) {
    require_same_chart(p.chart(), q.chart(), "sj_bracket");
    const int k = p.degree();
    const int r = q.degree();
    const Rational sk((k % 2 == 0) ? 1 : -1); // (-1)^k

    // Typed zeros produced by the addends can carry inconsistent degrees
    // (e.g. the bracket of two functions is reported in degree 0), so start
    // from zeros of the target degrees and fold in only the nonzero terms.
    // For k = r = 0 the bracket vanishes and is reported as a degree-0 zero.
    const int deg = std::max(k + r - 1, 0);
    Multivector d0 = Multivector::zero(p.chart(), deg);
    Multivector d1 = Multivector::zero(p.chart(), deg - 1);
    auto acc = [](Multivector& into, const Multivector& term) {
        if (!term.is_zero()) into = into + term;
    };
    acc(d0, sn_bracket(p.d0, q.d0));
    acc(d0, Rational(k - 1) * wedge(p.d0, q.d1));
    acc(d0, sk * Rational(r - 1) * wedge(p.d1, q.d0));
    acc(d1, sn_bracket(p.d1, q.d0));
    acc(d1, -sk * sn_bracket(p.d0, q.d1));
    acc(d1, Rational(k - r) * wedge(p.d1, q.d1));
    if (d0.degree() != deg || d1.degree() != deg - 1)
        throw error("sj_bracket: internal degree error");
    return {std::move(d0), std::move(d1)};
}

Scalar op_on_functions(const FirstOrderOp& d, const std::vector<Scalar>& fs) {
    if (static_cast<int>(fs.size()) != d.degree())
        throw error("op_on_functions: arity mismatch");
    if (d.degree() == 0) return d.d0.to_scalar();
    Scalar r = bracket_of_functions(d.d0, fs);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<Scalar> rest;
        rest.reserve(fs.size() - 1);
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) rest.push_back(fs[j]);
        Scalar part = fs[i] * bracket_of_functions(d.d1, rest);
        r = (i % 2 == 0) ? r + part : r - part;
    }
    return r;
}

FirstOrderOp op_wedge(const FirstOrderOp& a, const FirstOrderOp& b) {
    // (A0 + I^A1) ^ (B0 + I^B1) = A0^B0 + I ^ (A1^B0 + (-1)^p A0^B1)
    Multivector d0 = wedge(a.d0, b.d0);
    Multivector d1 = wedge(a.d1, b.d0);
    Multivector cross = wedge(a.d0, b.d1);
    d1 = (a.degree() % 2 == 0) ? d1 + cross : d1 - cross;
    int deg = a.degree() + b.degree();
    if (d0.is_zero()) d0 = Multivector::zero(a.chart(), deg);
    if (d1.is_zero()) d1 = Multivector::zero(a.chart(), deg - 1);
    return {std::move(d0), std::move(d1)};
}

FormPair pair_wedge(const FormPair& a, const FormPair& b) {
    DiffForm a0 = wedge(a.a0, b.a0);
    DiffForm a1 = wedge(a.a1, b.a0);
    DiffForm cross = wedge(a.a0, b.a1);
    a1 = (a.degree() % 2 == 0) ? a1 + cross : a1 - cross;
    int deg = a.degree() + b.degree();
    if (a0.is_zero()) a0 = DiffForm::zero(a.chart(), deg);
    if (a1.is_zero()) a1 = DiffForm::zero(a.chart(), deg - 1);
    return {std::move(a0), std::move(a1)};
}

FormPair jacobi_differential(const FormPair& a) {
    DiffForm d0 = exterior_derivative(a.a0);
    DiffForm d1 = a.a1.degree() < 0 ? DiffForm::zero(a.chart(), a.degree())
                                    : -exterior_derivative(a.a1);
    d1 = d1 + a.a0;
    if (d1.is_zero()) d1 = DiffForm::zero(a.chart(), a.degree());
    return {std::move(d0), std::move(d1)};
}

} // namespace pj
