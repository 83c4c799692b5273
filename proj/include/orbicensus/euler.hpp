#pragma once

#include <vector>

#include "orbicensus/rational.hpp"
#include "orbicensus/signature.hpp"

namespace orbi {

/// Euler number of the complement of r general-position hyperplanes in P^n,
/// by deletion-restriction: e(r,n) = e(r-1,n) - e(r-1,n-1), e(0,n) = n+1,
/// e(r,0) = 1.
Integer e_complement(int r, int n);

/// Same quantity in closed form, (-1)^n C(r-2, n) with the generalized
/// binomial (r-2 may be negative).
Integer e_complement_closed(int r, int n);

/// s_i = 1 - 1/m_i.
std::vector<Rational> s_vector(const OrbifoldSignature& sig);

/// Coefficients e_0..e_k of Π (1 + x_i t), truncated at degree k.
std::vector<Rational> elementary_symmetric(const std::vector<Rational>& x, int k);

/// Σ_j (-1)^j (n+1-j) e_j(s) for a linear locus.
Rational e_orb_formula(const OrbifoldSignature& sig);

/// Σ over strata B (|B| <= n) of e(r-|B|, n-|B|) / Π_{i∈B} m_i for a linear locus.
Rational e_orb_stratified(const OrbifoldSignature& sig);

/// e_orb · |π₁^orb|, the Euler number of the universal uniformization.
Integer e_universal(const OrbifoldSignature& sig);

}  // namespace orbi
