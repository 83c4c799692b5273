#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbicensus/groups.hpp"
#include "orbicensus/rational.hpp"
#include "orbicensus/signature.hpp"

namespace orbi {

/// Σ d_i (1 - 1/m_i) - (n+1); zero exactly for Calabi–Yau orbifolds.
Rational cy_defect(const OrbifoldSignature& sig);
bool is_calabi_yau(const OrbifoldSignature& sig);

struct BoundsCheck {
  bool ok = true;
  std::string reason;
};

/// n+2 <= d <= 2n+2, and d = 2n+2 forces every m_i = 2. Requires a CY input.
BoundsCheck check_degree_bounds(const OrbifoldSignature& sig);

/// Every canonical CY signature on P^n with finite multiplicities that
/// admits a finite abelian smooth uniformization (for n = 1: every CY
/// point configuration). Sorted, duplicate-free. `jobs` = 0 picks the
/// hardware concurrency; the result does not depend on it.
std::vector<OrbifoldSignature> enumerate_cy(int n, bool linear_only = false, unsigned jobs = 0);

enum class DeltaConvention { Moduli, LinearSystem };

/// Parameter count of the locus family: Σ (C(n+d_i, n) - 1), minus
/// dim PGL(n+1) = n(n+2) for the moduli convention. Not floored at zero.
Integer family_dimension(const OrbifoldSignature& sig, DeltaConvention convention);

/// Kummer suborbifold [c × (n+1)] on n+1 linear components and the
/// orbifold covering it induces.
struct CoveringEdge {
  IndexSet branch;                         // canonical indices, ascending
  std::int64_t kummer_exponent = 0;        // c
  std::vector<std::int64_t> suborbifold;   // c on the branch, 1 elsewhere
  Integer deck_order;                      // c^n
  std::optional<OrbifoldSignature> target; // set once lifted
};

/// Validates and builds the edge for the given branch components.
CoveringEdge make_covering(const OrbifoldSignature& sig, IndexSet branch, std::int64_t c);

/// Every choice of n+1 linear components and common divisor c >= 2.
std::vector<CoveringEdge> diagonal_suborbifolds(const OrbifoldSignature& sig);

/// Lifting b' = b∘φ / c∘φ along the Kummer cover. Branch multiplicities drop
/// to m/c (removed at 1); other components of degree d pull back to one
/// component of degree c·d (on P^1: c·d points). Throws
/// ConservationViolation when the lift breaks |G_src| = |G_tgt| · c^n or
/// the canonical-class scaling.
OrbifoldSignature lift(const OrbifoldSignature& sig, const CoveringEdge& edge);

/// The four finite dimension-1 rows.
std::vector<OrbifoldSignature> classical_dimension_one();
/// [∞ × (n+1)], uniformized by C^n.
OrbifoldSignature infinity_completion(int n);

/// Order arithmetic of the non-abelian quotient of [2 × 8] on P^3.
struct NonAbelianCheck {
  Integer abelian_order;  // |π₁^orb([2×8])|
  Integer extension;      // 2^3, the (Z/2)^3 sign action
  Integer total;          // abelian_order · extension
  Integer automorphisms;  // total · 4!
};
NonAbelianCheck nonabelian_order_check();

enum class EulerProvenance { ComputedLinear, Propagated, Fixture, Unknown };
std::string_view to_string(EulerProvenance p);

struct CensusEdge {
  CoveringEdge edge;
  std::optional<int> target_row;
};

struct CensusRow {
  int row = 0;
  OrbifoldSignature signature;
  std::int64_t degree = 0;
  bool fixture = false;
  std::optional<GroupStructure> group;  // nullopt: infinite fixture row
  std::optional<Rational> e_orb;
  std::optional<Integer> e_universal;
  EulerProvenance provenance = EulerProvenance::Unknown;
  std::optional<int> e_source_row;
  Integer delta_moduli;
  Integer delta_linear_system;
  std::vector<CensusEdge> coverings;
  std::vector<std::string> flags;

  std::optional<Integer> group_order() const;
};

struct ErrataEntry {
  std::string table_id;
  int row_id = 0;
  std::string field;
  std::string printed_value;
  std::string computed_value;
  std::string justification;
};

struct ErrataReport {
  std::vector<ErrataEntry> entries;
  /// Printed values the census cannot confirm (no computed counterpart).
  std::vector<ErrataEntry> unverified;
};

struct Census {
  int dim = 0;
  bool linear_only = false;
  std::vector<CensusRow> rows;
  /// Conflicts found while propagating Euler numbers.
  ErrataReport internal;

  const CensusRow* find(const OrbifoldSignature& sig) const;
};

Census build_census(int n, bool linear_only = false, unsigned jobs = 0);

}  // namespace orbi
