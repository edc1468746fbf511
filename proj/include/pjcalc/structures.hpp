#pragma once

#include "pjcalc/homogeneity.hpp"

namespace pj {

/// Result of a canonical-structure check: ok iff the self-bracket vanishes;
/// otherwise the nonzero obstruction is kept as the certificate.
struct PoissonCheck {
    bool ok;
    Multivector obstruction; // [[L, L]], degree 3
};

struct JacobiCheck {
    bool ok;
    FirstOrderOp obstruction; // [[D, D]]^1, degree 3
};

PoissonCheck is_poisson(const Multivector& lambda);
JacobiCheck is_jacobi(const FirstOrderOp& d);

/// Finite-family check of the Nambu fundamental identity
/// [[...[[P, f_1]], ...], f_{k-1}]], P]] = 0 (with the Schouten-Jacobi
/// bracket in the operator variant). Quantifying over all smooth functions
/// is not decidable here, so this is a NECESSARY-condition check over the
/// supplied family (default: coordinates plus pairwise coordinate products).
struct NambuReport {
    bool ok;
    std::string witness; // first failing tuple, when !ok
};

std::vector<Scalar> default_nambu_family(const ChartPtr& chart);
NambuReport nambu_check(const Multivector& p, const std::vector<Scalar>& family = {});
NambuReport nambu_check(const FirstOrderOp& d, const std::vector<Scalar>& family = {});

/// Inverse of a symplectic 2-form over the Laurent ring. The coefficient
/// matrix must have a unit (monomial) determinant; the sign convention is
/// fixed by invert_symplectic(dq^dp) = @q^@p.
Multivector invert_symplectic(const DiffForm& omega);

/// Hamiltonian vector field of f with respect to Lambda; the sign is fixed
/// by hamiltonian_poisson(@q^@p, (q^2 + p^2)/2) = p @q - q @p.
Multivector hamiltonian_poisson(const Multivector& lambda, const Scalar& f);

/// Contact data produced by reducing a degree-1 homogeneous symplectic form:
/// eta = j*(i_Delta omega), d eta = j* omega, Reeb field Gamma with
/// i_Gamma d eta = 0 and <eta, Gamma> = 1.
struct ContactData {
    DiffForm eta;           // degree 1 on the slice
    DiffForm d_eta;         // degree 2
    Multivector reeb;       // degree 1
    DiffForm nondegeneracy; // (d eta)^m ^ eta, a nonzero top form
};

ContactData contact_reduce(const DiffForm& omega, const HomogeneousSetup& setup);

/// Flat map of a contact form: b(X) = <eta, X> eta - i_X d eta.
DiffForm contact_flat(const ContactData& cd, const Multivector& x);

/// Hamiltonian field of f: the solution of b(H_f) = (df - Gamma(f) eta) + f eta.
Multivector contact_hamiltonian(const ContactData& cd, const Scalar& f);

/// Contact Jacobi bracket {f,g} = H_f(g) - g Gamma(f).
Scalar contact_bracket(const ContactData& cd, const Scalar& f, const Scalar& g);

} // namespace pj
