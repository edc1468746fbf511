#pragma once

#include "pjcalc/firstorder.hpp"

#include <optional>
#include <string>

namespace pj {

/// A product chart N x R with the distinguished variable t, the homogeneity
/// field Delta (default t @t) and the function 1~ = t whose level set {t=1}
/// is the slice N.
struct HomogeneousSetup {
    ChartPtr chart;      // has a homogeneity variable
    int t_index;
    Multivector delta;   // degree 1
    Scalar one_tilde;    // = t
    ChartPtr slice;      // chart with t removed

    static HomogeneousSetup product(const ChartPtr& chart);
    static HomogeneousSetup with_delta(const ChartPtr& chart, Multivector delta);

    bool delta_is_product() const; // delta == t @t exactly
};

struct DegreeResult {
    enum class Kind { ZeroTensor, Homogeneous, NotHomogeneous };
    Kind kind = Kind::NotHomogeneous;
    Rational degree; // valid only for Homogeneous

    static DegreeResult zero() { return {Kind::ZeroTensor, Rational(0)}; }
    static DegreeResult homogeneous(Rational n) { return {Kind::Homogeneous, std::move(n)}; }
    static DegreeResult not_homogeneous() { return {Kind::NotHomogeneous, Rational(0)}; }

    bool is(Kind k) const { return kind == k; }
    friend bool operator==(const DegreeResult& a, const DegreeResult& b) {
        return a.kind == b.kind && (a.kind != Kind::Homogeneous || a.degree == b.degree);
    }
};

/// Unique n with L_Delta T = n T, if one exists.
DegreeResult homogeneity_degree(const Scalar& f, const Multivector& delta);
DegreeResult homogeneity_degree(const Multivector& t, const Multivector& delta);
DegreeResult homogeneity_degree(const DiffForm& t, const Multivector& delta);
DegreeResult homogeneity_degree(const FirstOrderOp& d, const Multivector& delta);

/// Bracket-based degree check: runs the k-ary bracket of T over a finite
/// family of homogeneous generator functions and reports the degree implied
/// by every bracket value, if they agree. This is a necessary-condition
/// check over the finite family, cross-validated against homogeneity_degree
/// in tests, never trusted alone.
struct BracketDegreeReport {
    bool consistent = false;
    std::optional<Rational> degree; // empty when all brackets vanish
    std::string detail;
};

BracketDegreeReport degree_via_brackets(const Multivector& p, const HomogeneousSetup& setup);
BracketDegreeReport degree_via_brackets(const FirstOrderOp& d, const HomogeneousSetup& setup);

/// Unique splitting P = P0 + Delta ^ P1 with P0, P1 free of @t.
/// Requires Delta = t @t.
struct DeltaDecomposition {
    Multivector p0; // degree k
    Multivector p1; // degree k-1
};

DeltaDecomposition decompose_along_delta(const Multivector& p, const HomogeneousSetup& setup);

/// J(P) = P0 (+) P1 on the product chart; the `homogeneous` flag records
/// whether P had degree 1-k, the case in which the reduction preserves
/// brackets and is invertible.
struct ReducedOp {
    FirstOrderOp op;
    bool homogeneous;
};

ReducedOp reduce_J(const Multivector& p, const HomogeneousSetup& setup);
ReducedOp reduce_JN(const Multivector& p, const HomogeneousSetup& setup); // restricted to {t=1}

/// Inverse of J_N: extends D on the slice t-independently and forms
/// t^{1-k} (P0 + (t @t) ^ P1) on the product chart.
Multivector poissonize(const FirstOrderOp& d_on_slice, const HomogeneousSetup& setup);

/// Dual decomposition alpha = t (a0 + (dt/t) ^ a1) with i_Delta a0 = i_Delta a1 = 0.
struct ReducedPair {
    FormPair pair;
    bool homogeneous; // degree-1 homogeneity of the input
};

ReducedPair psi(const DiffForm& a, const HomogeneousSetup& setup);
ReducedPair psi_N(const DiffForm& a, const HomogeneousSetup& setup); // (j* a, j* i_Delta a)

/// t-independent extension of slice data to the product chart.
Scalar extend_to_product(const Scalar& f, const HomogeneousSetup& setup);
Multivector extend_to_product(const Multivector& t, const HomogeneousSetup& setup);
DiffForm extend_to_product(const DiffForm& t, const HomogeneousSetup& setup);

} // namespace pj
