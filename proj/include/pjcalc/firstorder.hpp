#pragma once

#include "pjcalc/exterior.hpp"

namespace pj {

/// First-order polydifferential operator of degree k, stored split as
/// D = D0 + I ^ D1 with D0 in A^k and D1 in A^{k-1}. For k = 0 the D1
/// component is the typed zero of degree -1.
struct FirstOrderOp {
    Multivector d0;
    Multivector d1;

    FirstOrderOp(Multivector d0_, Multivector d1_) : d0(std::move(d0_)), d1(std::move(d1_)) {
        require_same_chart(d0.chart(), d1.chart(), "first-order operator");
        if (d1.degree() != d0.degree() - 1)
            throw error("first-order operator: component degrees must be (k, k-1)");
    }

    int degree() const { return d0.degree(); }
    const ChartPtr& chart() const { return d0.chart(); }
    bool is_zero() const { return d0.is_zero() && d1.is_zero(); }

    static FirstOrderOp zero(const ChartPtr& chart, int degree) {
        return {Multivector::zero(chart, degree), Multivector::zero(chart, degree - 1)};
    }

    /// Embedding of A^k: the operators with i_phi D = 0.
    static FirstOrderOp embed(const Multivector& p) {
        return {p, Multivector::zero(p.chart(), p.degree() - 1)};
    }

    static FirstOrderOp from_scalar(const Scalar& f) {
        return embed(Multivector::from_scalar(f));
    }

    /// The identity operator I = 0 (+) 1.
    static FirstOrderOp identity(const ChartPtr& chart) {
        return {Multivector::zero(chart, 1), Multivector::from_scalar(Scalar::one(chart))};
    }

    /// i_phi D, i.e. the D1 component.
    const Multivector& i_phi() const { return d1; }

    friend bool operator==(const FirstOrderOp& a, const FirstOrderOp& b) {
        return a.d0 == b.d0 && a.d1 == b.d1;
    }
    friend bool operator!=(const FirstOrderOp& a, const FirstOrderOp& b) { return !(a == b); }

    FirstOrderOp operator+(const FirstOrderOp& rhs) const { return {d0 + rhs.d0, d1 + rhs.d1}; }
    FirstOrderOp operator-(const FirstOrderOp& rhs) const { return {d0 - rhs.d0, d1 - rhs.d1}; }
    FirstOrderOp operator-() const { return {-d0, -d1}; }
    FirstOrderOp operator*(const Scalar& s) const { return {d0 * s, d1 * s}; }
    FirstOrderOp operator*(const Rational& c) const { return {d0 * c, d1 * c}; }
};

/// Section of wedge^k (T^1 M)^*, stored split as alpha = a0 + phi ^ a1.
struct FormPair {
    DiffForm a0;
    DiffForm a1;

    FormPair(DiffForm a0_, DiffForm a1_) : a0(std::move(a0_)), a1(std::move(a1_)) {
        require_same_chart(a0.chart(), a1.chart(), "form pair");
        if (a1.degree() != a0.degree() - 1)
            throw error("form pair: component degrees must be (k, k-1)");
    }

    int degree() const { return a0.degree(); }
    const ChartPtr& chart() const { return a0.chart(); }
    bool is_zero() const { return a0.is_zero() && a1.is_zero(); }

    static FormPair zero(const ChartPtr& chart, int degree) {
        return {DiffForm::zero(chart, degree), DiffForm::zero(chart, degree - 1)};
    }

    static FormPair embed(const DiffForm& a) {
        return {a, DiffForm::zero(a.chart(), a.degree() - 1)};
    }

    static FormPair from_scalar(const Scalar& f) { return embed(DiffForm::from_scalar(f)); }

    friend bool operator==(const FormPair& a, const FormPair& b) {
        return a.a0 == b.a0 && a.a1 == b.a1;
    }
    friend bool operator!=(const FormPair& a, const FormPair& b) { return !(a == b); }

    FormPair operator+(const FormPair& rhs) const { return {a0 + rhs.a0, a1 + rhs.a1}; }
    FormPair operator-(const FormPair& rhs) const { return {a0 - rhs.a0, a1 - rhs.a1}; }
    FormPair operator-() const { return {-a0, -a1}; }
    FormPair operator*(const Scalar& s) const { return {a0 * s, a1 * s}; }
};

/// Schouten-Jacobi bracket on split operators, D^k x D^r -> D^{k+r-1}.
FirstOrderOp sj_bracket(const FirstOrderOp& p, const FirstOrderOp& q);

/// {f_1,...,f_k}_D = {f...}_{D0} + sum_i (-1)^{i+1} f_i {f... without f_i}_{D1}.
Scalar op_on_functions(const FirstOrderOp& d, const std::vector<Scalar>& fs);

FirstOrderOp op_wedge(const FirstOrderOp& a, const FirstOrderOp& b);
FormPair pair_wedge(const FormPair& a, const FormPair& b);

/// Jacobi differential d1(a0, a1) = (d a0, -d a1 + a0); d1 f = (df, f).
FormPair jacobi_differential(const FormPair& a);

} // namespace pj
