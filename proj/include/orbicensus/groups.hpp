#pragma once

#include <optional>
#include <vector>

#include "orbicensus/rational.hpp"
#include "orbicensus/signature.hpp"
#include "orbicensus/smith.hpp"

namespace orbi {

using RelationMatrix = IntMatrix<Integer>;

/// Finite abelian group ⊕ Z/n_i ⊕ Z^free_rank, n_1 | n_2 | ...
struct GroupStructure {
  std::vector<Integer> invariant_factors;
  int free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  /// nullopt when the group is infinite.
  std::optional<Integer> order() const;

  friend bool operator==(const GroupStructure&, const GroupStructure&) = default;
};

/// Extra relations imposed on the meridian group, one vector per relation,
/// each of length r.
struct QuotientSpec {
  std::vector<std::vector<Integer>> extra_relations;
};

std::vector<Integer> smith_normal_form(const RelationMatrix& m);
GroupStructure group_from_relations(const RelationMatrix& m);

/// Rows m_i μ_i = 0 followed by Σ d_i μ_i = 0.
RelationMatrix orb_relation_matrix(const OrbifoldSignature& sig);

/// Structure of π₁^orb via Smith normal form (n >= 2, finite multiplicities).
GroupStructure orb_group_structure(const OrbifoldSignature& sig);

/// Π m_i / lcm(f_i).
Integer orb_group_order_formula(const OrbifoldSignature& sig);

/// Order of the local group at a point on exactly the components in B.
Integer local_germ_order(const OrbifoldSignature& sig, std::span<const int> subset);

/// Whether the covering with group π₁^orb / q is a uniformization: every
/// maximal stratum group injects. `paranoid` also checks all |B| < n.
bool quotient_uniformizes(const OrbifoldSignature& sig, const QuotientSpec& q, bool paranoid = false);

/// Order of π₁^orb / q; throws InfiniteQuotient.
Integer quotient_order(const OrbifoldSignature& sig, const QuotientSpec& q);

struct EnriquesQuotients {
  Integer count;
  std::vector<IndexSet> subsets;  // S with α_S = Σ_{i∈S} μ_i, S ∋ 0
  std::vector<QuotientSpec> specs;
};

/// Index-2 intermediate uniformizations of [2 × (2n+2)] on P^n.
EnriquesQuotients enumerate_enriques_quotients(int n, bool paranoid = false);

/// The all-2 signature with 2n+2 linear components.
OrbifoldSignature all_two_signature(int n);

}  // namespace orbi
