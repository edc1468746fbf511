#pragma once

#include "pjcalc/tensor.hpp"

namespace pj {

template <Variance V>
Tensor<V> wedge(const Tensor<V>& a, const Tensor<V>& b);

/// Interior product against the first slot: for a vector field X,
/// i_X(dx_{j1} ^ ... ^ dx_{jk}) = sum_m (-1)^{m+1} X^{jm} dx_{j1} ^ ... (m-th
/// factor removed). Same formula with the roles of vectors and covectors
/// swapped gives i_phi on multivectors.
DiffForm interior(const Multivector& x, const DiffForm& t);
Multivector interior(const DiffForm& phi, const Multivector& t);

/// Full contraction of equal degrees: <@i1^...^@ik, dx_j1^...^dx_jk> = det(delta_ij).
Scalar pairing(const Multivector& p, const DiffForm& a);

/// The differential of a function, as a 1-form.
DiffForm differential(const Scalar& f);

DiffForm exterior_derivative(const DiffForm& a);

/// Schouten-Nijenhuis bracket, A^p x A^q -> A^{p+q-1}. Implemented by
/// recursive graded-Leibniz expansion on decomposable terms, anchored at
/// [[X,f]] = X(f) and the commutator of vector fields.
Multivector sn_bracket(const Multivector& p, const Multivector& q);

/// Derivation X(f) for a degree-1 multivector X.
Scalar apply_vector(const Multivector& x, const Scalar& f);

Multivector lie_derivative(const Multivector& x, const Multivector& t);
DiffForm lie_derivative(const Multivector& x, const DiffForm& t); // Cartan formula
Scalar lie_derivative(const Multivector& x, const Scalar& f);

/// <P, df_1 ^ ... ^ df_k>, the k-ary bracket of functions.
Scalar bracket_of_functions(const Multivector& p, const std::vector<Scalar>& fs);

/// Pull back / restrict to the slice {t=1}, landing on the chart with t
/// removed. Multivectors must be tangent to the slice foliation (no @t
/// component); for forms the dt-components are discarded.
Multivector restrict_to_slice(const Multivector& t, int t_index, const ChartPtr& slice);
DiffForm restrict_to_slice(const DiffForm& t, int t_index, const ChartPtr& slice);

template <Variance V>
Tensor<V> eval_at_point(const Tensor<V>& t, const Point& p);

/// Chart with the homogeneity variable removed.
ChartPtr slice_chart(const Chart& chart);

} // namespace pj
