#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbicensus/rational.hpp"

namespace orbi {

/// Generic b-value on a locus component: a finite integer >= 2 or infinity.
class Multiplicity {
 public:
  explicit Multiplicity(std::int64_t m);
  static Multiplicity infinity() { return Multiplicity(); }

  bool is_infinite() const noexcept { return m_ == 0; }
  /// Throws InfiniteMultiplicity for infinity.
  std::int64_t value() const;

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
  // infinity sorts above every finite value
  friend std::strong_ordering operator<=>(const Multiplicity& a, const Multiplicity& b) {
    return a.sort_key() <=> b.sort_key();
  }

 private:
  Multiplicity() = default;
  std::int64_t sort_key() const noexcept { return is_infinite() ? INT64_MAX : m_; }
  std::int64_t m_ = 0;
};

/// Irreducible smooth hypersurface of the given degree carrying a multiplicity.
struct LocusComponent {
  std::int64_t degree = 1;
  Multiplicity multiplicity{2};

  bool is_linear() const noexcept { return degree == 1; }

  friend bool operator==(const LocusComponent&, const LocusComponent&) = default;
  friend std::strong_ordering operator<=>(const LocusComponent& a, const LocusComponent& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    return a.multiplicity <=> b.multiplicity;
  }
};

using FVector = std::vector<std::int64_t>;
using IndexSet = std::vector<int>;

/// Sorts components by (degree, multiplicity) descending.
std::vector<LocusComponent> canonicalize(std::vector<LocusComponent> components);

/// An orbifold structure on P^n given by its locus Σ m_i H_i. Always held in
/// canonical component order; the locus is never empty.
class OrbifoldSignature {
 public:
  OrbifoldSignature(int dim, std::vector<LocusComponent> components);

  int dim() const noexcept { return dim_; }
  std::span<const LocusComponent> components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  const LocusComponent& operator[](std::size_t i) const { return components_[i]; }

  bool is_linear() const noexcept;
  bool is_finite() const noexcept;

  friend bool operator==(const OrbifoldSignature&, const OrbifoldSignature&) = default;
  /// Total degree first, then the canonical component list.
  friend std::strong_ordering operator<=>(const OrbifoldSignature& a, const OrbifoldSignature& b);

 private:
  int dim_;
  std::vector<LocusComponent> components_;
};

OrbifoldSignature canonicalize(const OrbifoldSignature& sig);

enum class RenderStyle { Machine, Human };

/// Components in the order written, e.g. "[2_2, 3,3,3]". Throws ParseError.
std::vector<LocusComponent> parse_components(std::string_view text);
OrbifoldSignature parse_signature(std::string_view text, int dim);

std::string render(const OrbifoldSignature& sig, RenderStyle style = RenderStyle::Machine);
std::string render(std::span<const LocusComponent> components, RenderStyle style = RenderStyle::Machine);

std::int64_t total_degree(const OrbifoldSignature& sig);

/// m_i for every component; throws InfiniteMultiplicity.
std::vector<std::int64_t> multiplicities(const OrbifoldSignature& sig);

/// f_i = m_i / gcd(m_i, d_i).
FVector f_vector(const OrbifoldSignature& sig);

/// b-value Π_{i∈B} m_i on the stratum cut out by the components in B.
Integer stratum_b_value(const OrbifoldSignature& sig, std::span<const int> subset);

/// Throws unless `subset` holds distinct in-range indices with |B| <= dim.
void validate_subset(const OrbifoldSignature& sig, std::span<const int> subset);

/// Maps 0-based positions in a written component list onto indices of the
/// canonical signature built from it (equal components matched in order).
IndexSet map_positions(std::span<const LocusComponent> written, const OrbifoldSignature& sig,
                       std::span<const int> positions);

}  // namespace orbi
