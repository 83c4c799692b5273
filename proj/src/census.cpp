#include "orbicensus/census.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "orbicensus/arith.hpp"
#include "orbicensus/error.hpp"
#include "orbicensus/euler.hpp"
#include "orbicensus/uniformization.hpp"

namespace orbi {

Rational cy_defect(const OrbifoldSignature& sig) {
  Rational sum(0);
  for (const auto& c : sig.components()) {
    const std::int64_t m = c.multiplicity.value();
    sum += Rational(c.degree) * (Rational(1) - Rational(1, m));
  }
  return sum - Rational(sig.dim() + 1);
}

bool is_calabi_yau(const OrbifoldSignature& sig) { return cy_defect(sig).sign() == 0; }

BoundsCheck check_degree_bounds(const OrbifoldSignature& sig) {
  if (!is_calabi_yau(sig))
    throw Error(ErrorCode::Precondition, render(sig) + " is not Calabi-Yau (defect " + cy_defect(sig).str() + ")");
  const int n = sig.dim();
  const std::int64_t d = total_degree(sig);
  if (d < n + 2 || d > 2 * n + 2)
    return {false, "degree " + std::to_string(d) + " outside [" + std::to_string(n + 2) + ", " +
                       std::to_string(2 * n + 2) + "]"};
  if (d == 2 * n + 2) {
    for (const auto& c : sig.components())
      if (c.multiplicity.value() != 2) return {false, "degree 2n+2 requires every multiplicity to be 2"};
  }
  return {true, "n+2 <= d <= 2n+2"};
}

namespace {

void partitions(int remaining, int max_part, std::vector<std::int64_t>& current,
                std::vector<std::vector<std::int64_t>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions(remaining - p, p, current, out);
    current.pop_back();
  }
}

// Multiplicity search for one degree multiset. Components are placed in
// order of non-increasing contribution d/m toward the target
// t = Σ d_i/m_i = d - (n+1); with k left and residual t', the next
// contribution lies in [t'/k, previous], which bounds m from both sides.
class MultiplicitySearch {
 public:
  MultiplicitySearch(int n, const std::vector<std::int64_t>& degrees, bool require_uniformizable)
      : n_(n), require_uniformizable_(require_uniformizable) {
    std::map<std::int64_t, int, std::greater<>> counts;
    for (auto d : degrees) ++counts[d];
    pool_.assign(counts.begin(), counts.end());
    total_ = static_cast<int>(degrees.size());
    allowed_deficient_ = total_ - n - 1;
  }

  std::vector<OrbifoldSignature> run() {
    const std::int64_t d = std::accumulate(pool_.begin(), pool_.end(), std::int64_t{0},
                                           [](std::int64_t s, const auto& p) { return s + p.first * p.second; });
    recurse(mpq_class(d - (n_ + 1)), std::nullopt, total_);
    std::vector<OrbifoldSignature> out(found_.begin(), found_.end());
    return out;
  }

 private:
  void recurse(const mpq_class& rem, const std::optional<mpq_class>& cap, int left) {
    if (left == 0) {
      if (sgn(rem) == 0) accept();
      return;
    }
    if (sgn(rem) <= 0) return;
    for (auto& [degree, count] : pool_) {
      if (count == 0) continue;
      // d/m <= cap  =>  m >= d/cap ;  d/m >= rem/left  =>  m <= d*left/rem
      mpz_class lo = 2;
      if (cap) {
        mpz_class num = mpz_class(static_cast<long>(degree)) * cap->get_den();
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), cap->get_num().get_mpz_t());
        if (c > lo) lo = c;
      }
      mpz_class hi_num = mpz_class(static_cast<long>(degree)) * left * rem.get_den();
      mpz_class hi;
      mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), rem.get_num().get_mpz_t());
      if (hi < lo) continue;
      if (!hi.fits_slong_p()) throw Error(ErrorCode::Internal, "multiplicity bound overflow");
      const std::int64_t lo_i = lo.get_si();
      const std::int64_t hi_i = hi.get_si();
      --count;
      for (std::int64_t m = lo_i; m <= hi_i; ++m) {
        assigned_.push_back(LocusComponent{degree, Multiplicity(m)});
        if (feasible()) {
          mpq_class contribution(static_cast<long>(degree), static_cast<long>(m));
          contribution.canonicalize();
          recurse(rem - contribution, contribution, left - 1);
        }
        assigned_.pop_back();
      }
      ++count;
    }
  }

  // Necessary condition of the uniformization criterion on a partial
  // assignment: for each prime, components already below the running
  // maximum exponent stay below the final one, and at most r - n - 1
  // components may fall short.
  bool feasible() const {
    if (!require_uniformizable_) return true;
    FVector f;
    for (const auto& c : assigned_) {
      const std::int64_t m = c.multiplicity.value();
      f.push_back(m / std::gcd(m, c.degree));
    }
    std::vector<std::int64_t> primes;
    for (auto x : f)
      for (auto [p, e] : factorize(x)) primes.push_back(p);
    if (primes.empty()) return true;
    if (allowed_deficient_ < 0) return false;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes) {
      int top = 0;
      std::vector<int> ex;
      for (auto x : f) {
        ex.push_back(valuation(x, p));
        top = std::max(top, ex.back());
      }
      const auto short_count = std::count_if(ex.begin(), ex.end(), [top](int e) { return e < top; });
      if (short_count > allowed_deficient_) return false;
    }
    return true;
  }

  void accept() {
    OrbifoldSignature sig(n_, assigned_);
    if (require_uniformizable_ && !is_uniformizable_prime_power(sig)) return;
    found_.insert(std::move(sig));
  }

  int n_;
  bool require_uniformizable_;
  int total_ = 0;
  int allowed_deficient_ = 0;
  std::vector<std::pair<std::int64_t, int>> pool_;
  std::vector<LocusComponent> assigned_;
  std::set<OrbifoldSignature> found_;
};

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on a small pool; results are written to
// per-index slots so the caller's merge order is fixed.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& task) {
  const unsigned workers = std::min<unsigned>(resolve_jobs(jobs), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<OrbifoldSignature> enumerate_cy(int n, bool linear_only, unsigned jobs) {
  if (n < 1) throw Error(ErrorCode::Precondition, "dimension must be >= 1");
  // Points on P^1 are the degree-1 components there.
  if (n == 1) linear_only = true;

  // Σ d_i(1 - 1/m_i) = n+1 with 1/2 <= 1 - 1/m_i < 1 gives n+2 <= d <= 2n+2.
  std::vector<std::vector<std::int64_t>> tasks;
  for (int d = n + 2; d <= 2 * n + 2; ++d) {
    if (linear_only) {
      tasks.emplace_back(static_cast<std::size_t>(d), 1);
      continue;
    }
    std::vector<std::int64_t> current;
    partitions(d, d, current, tasks);
  }

  std::vector<std::vector<OrbifoldSignature>> results(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    results[i] = MultiplicitySearch(n, tasks[i], n >= 2).run();
  });

  std::vector<OrbifoldSignature> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& sig : out) {
    const auto bounds = check_degree_bounds(sig);
    if (!bounds.ok) throw Error(ErrorCode::Internal, render(sig) + " violates degree bounds: " + bounds.reason);
  }
  return out;
}

Integer family_dimension(const OrbifoldSignature& sig, DeltaConvention convention) {
  const int n = sig.dim();
  Integer total = 0;
  for (const auto& c : sig.components()) total += binomial(n + c.degree, n) - 1;
  if (convention == DeltaConvention::Moduli) total -= n * (n + 2);
  return total;
}

CoveringEdge make_covering(const OrbifoldSignature& sig, IndexSet branch, std::int64_t c) {
  const int n = sig.dim();
  if (c < 2) throw Error(ErrorCode::InvalidCovering, "Kummer exponent must be >= 2");
  if (static_cast<int>(branch.size()) != n + 1)
    throw Error(ErrorCode::InvalidCovering, "a Kummer suborbifold needs exactly n+1 = " + std::to_string(n + 1) +
                                                " branch components, got " + std::to_string(branch.size()));
  std::sort(branch.begin(), branch.end());
  if (std::adjacent_find(branch.begin(), branch.end()) != branch.end())
    throw Error(ErrorCode::InvalidCovering, "branch components repeated");
  CoveringEdge edge;
  edge.suborbifold.assign(sig.size(), 1);
  for (int i : branch) {
    if (i < 0 || static_cast<std::size_t>(i) >= sig.size())
      throw Error(ErrorCode::InvalidCovering, "branch index " + std::to_string(i) + " out of range");
    const auto& comp = sig[static_cast<std::size_t>(i)];
    if (!comp.is_linear())
      throw Error(ErrorCode::InvalidCovering, "branch component " + std::to_string(i + 1) + " is not a hyperplane");
    if (!comp.multiplicity.is_infinite() && comp.multiplicity.value() % c != 0)
      throw Error(ErrorCode::InvalidCovering, "c = " + std::to_string(c) + " does not divide multiplicity " +
                                                  std::to_string(comp.multiplicity.value()));
    edge.suborbifold[static_cast<std::size_t>(i)] = c;
  }
  edge.branch = std::move(branch);
  edge.kummer_exponent = c;
  edge.deck_order = ipow(Integer(static_cast<long>(c)), static_cast<unsigned>(n));
  return edge;
}

std::vector<CoveringEdge> diagonal_suborbifolds(const OrbifoldSignature& sig) {
  const int n = sig.dim();
  IndexSet linear;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i].is_linear()) linear.push_back(static_cast<int>(i));
  std::vector<CoveringEdge> out;
  for_each_subset(static_cast<int>(linear.size()), n + 1, [&](const std::vector<int>& pick) {
    std::int64_t g = 0;
    IndexSet branch;
    for (int p : pick) {
      const int i = linear[static_cast<std::size_t>(p)];
      branch.push_back(i);
      const auto& m = sig[static_cast<std::size_t>(i)].multiplicity;
      if (!m.is_infinite()) g = std::gcd(g, m.value());
    }
    // all-infinite choices admit every c; those are the symbolic [m, ..., m] rows
    if (g == 0) return;
    for (std::int64_t c = 2; c <= g; ++c)
      if (g % c == 0) out.push_back(make_covering(sig, branch, c));
  });
  return out;
}

OrbifoldSignature lift(const OrbifoldSignature& sig, const CoveringEdge& edge) {
  const int n = sig.dim();
  const std::int64_t c = edge.kummer_exponent;
  // re-validate: edges may come from outside
  const CoveringEdge checked = make_covering(sig, edge.branch, c);

  std::vector<LocusComponent> out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const auto& comp = sig[i];
    if (checked.suborbifold[i] > 1) {
      if (comp.multiplicity.is_infinite()) {
        out.push_back(comp);
      } else if (comp.multiplicity.value() / c > 1) {
        out.push_back(LocusComponent{1, Multiplicity(comp.multiplicity.value() / c)});
      }
    } else if (n == 1) {
      for (std::int64_t k = 0; k < c * comp.degree; ++k) out.push_back(LocusComponent{1, comp.multiplicity});
    } else {
      out.push_back(LocusComponent{c * comp.degree, comp.multiplicity});
    }
  }
  if (out.empty())
    throw Error(ErrorCode::EmptyLocus, "lift of " + render(sig) + " has empty locus (uniformized by P^n itself)");
  OrbifoldSignature target(n, std::move(out));

  if (n >= 2 && sig.is_finite()) {
    // K of the lift is the pullback of K of the source, and φ*L = cL
    if (cy_defect(target) != Rational(c) * cy_defect(sig))
      throw Error(ErrorCode::ConservationViolation, "canonical class not preserved lifting " + render(sig));
    if (is_uniformizable_prime_power(sig)) {
      if (!is_uniformizable_prime_power(target))
        throw Error(ErrorCode::ConservationViolation, "lift " + render(target) + " of a uniformizable orbifold is not uniformizable");
      const Integer src = orb_group_order_formula(sig);
      const Integer tgt = orb_group_order_formula(target);
      if (src != tgt * checked.deck_order)
        throw Error(ErrorCode::ConservationViolation, "|G| " + to_string(src) + " != " + to_string(tgt) + " * " +
                                                          to_string(checked.deck_order) + " lifting " + render(sig) +
                                                          " to " + render(target));
    }
  }
  return target;
}

std::vector<OrbifoldSignature> classical_dimension_one() {
  return {parse_signature("[2,2,2,2]", 1), parse_signature("[2,3,6]", 1), parse_signature("[2,4,4]", 1),
          parse_signature("[3,3,3]", 1)};
}

OrbifoldSignature infinity_completion(int n) {
  return OrbifoldSignature(n, std::vector<LocusComponent>(static_cast<std::size_t>(n + 1),
                                                          LocusComponent{1, Multiplicity::infinity()}));
}

NonAbelianCheck nonabelian_order_check() {
  const auto sig = all_two_signature(3);
  NonAbelianCheck out;
  out.abelian_order = orb_group_order_formula(sig);
  out.extension = ipow(Integer(2), 3);
  out.total = out.abelian_order * out.extension;
  out.automorphisms = out.total * 24;
  return out;
}

std::string_view to_string(EulerProvenance p) {
  switch (p) {
    case EulerProvenance::ComputedLinear: return "computed-linear";
    case EulerProvenance::Propagated: return "propagated";
    case EulerProvenance::Fixture: return "fixture";
    case EulerProvenance::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Integer> CensusRow::group_order() const {
  if (!group) return std::nullopt;
  return group->order();
}

const CensusRow* Census::find(const OrbifoldSignature& sig) const {
  for (const auto& r : rows)
    if (r.signature == sig) return &r;
  return nullptr;
}

namespace {

CensusRow fixture_row(const OrbifoldSignature& sig) {
  CensusRow row{.signature = sig};
  row.degree = total_degree(sig);
  row.fixture = true;
  row.e_universal = Integer(0);
  row.provenance = EulerProvenance::Fixture;
  row.delta_linear_system = family_dimension(sig, DeltaConvention::LinearSystem);
  // n+1 general hyperplanes have no moduli; the raw count would be -n
  row.delta_moduli = std::max(Integer(0), family_dimension(sig, DeltaConvention::Moduli));
  row.flags.push_back("fixture");
  return row;
}

CensusRow computed_row(const OrbifoldSignature& sig) {
  CensusRow row{.signature = sig};
  row.degree = total_degree(sig);
  row.delta_linear_system = family_dimension(sig, DeltaConvention::LinearSystem);
  row.delta_moduli = family_dimension(sig, DeltaConvention::Moduli);
  if (sig.dim() == 1) {
    // Euclidean triangle-group type rows: infinite group, e = 0
    row.fixture = true;
    row.e_universal = Integer(0);
    row.provenance = EulerProvenance::Fixture;
    row.flags.push_back("fixture");
    return row;
  }
  row.group = orb_group_structure(sig);
  const Integer formula = orb_group_order_formula(sig);
  if (!row.group->order() || *row.group->order() != formula)
    throw Error(ErrorCode::Internal, "order formula and Smith normal form disagree on " + render(sig));
  if (sig.is_linear()) {
    row.e_orb = e_orb_formula(sig);
    if (*row.e_orb != e_orb_stratified(sig))
      throw Error(ErrorCode::Internal, "symmetric-function and stratified Euler sums disagree on " + render(sig));
    row.e_universal = e_universal(sig);
    row.provenance = EulerProvenance::ComputedLinear;
    row.flags.push_back("linear");
  }
  return row;
}

void attach_coverings(Census& census) {
  std::map<OrbifoldSignature, int> index;
  for (const auto& r : census.rows) index.emplace(r.signature, r.row);
  for (auto& row : census.rows) {
    std::set<std::tuple<std::int64_t, std::vector<LocusComponent>>> seen;
    for (auto& edge : diagonal_suborbifolds(row.signature)) {
      std::vector<LocusComponent> branch_type;
      for (int i : edge.branch) branch_type.push_back(row.signature[static_cast<std::size_t>(i)]);
      if (!seen.insert({edge.kummer_exponent, branch_type}).second) continue;
      edge.target = lift(row.signature, edge);
      CensusEdge ce{edge, std::nullopt};
      if (auto it = index.find(*edge.target); it != index.end()) {
        ce.target_row = it->second;
      } else if (!census.linear_only) {
        throw Error(ErrorCode::Internal, "lift " + render(*edge.target) + " of " + render(row.signature) +
                                             " is missing from the census");
      }
      row.coverings.push_back(std::move(ce));
    }
    std::stable_sort(row.coverings.begin(), row.coverings.end(), [](const CensusEdge& a, const CensusEdge& b) {
      return std::tuple(a.edge.kummer_exponent, a.edge.branch) < std::tuple(b.edge.kummer_exponent, b.edge.branch);
    });
  }
}

// Universal uniformizations along a covering edge coincide, so their Euler
// numbers agree; spread known values to a fixed point.
void propagate_euler(Census& census) {
  auto row_at = [&](int id) -> CensusRow& { return census.rows[static_cast<std::size_t>(id - 1)]; };
  std::set<std::pair<int, int>> reported;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& src : census.rows) {
      for (const auto& ce : src.coverings) {
        if (!ce.target_row || src.fixture) continue;
        CensusRow& dst = row_at(*ce.target_row);
        if (dst.fixture) continue;
        CensusRow* from = nullptr;
        CensusRow* to = nullptr;
        if (src.e_universal && !dst.e_universal) {
          from = &src;
          to = &dst;
        } else if (dst.e_universal && !src.e_universal) {
          from = &dst;
          to = &src;
        }
        if (from != nullptr) {
          to->e_universal = from->e_universal;
          to->provenance = EulerProvenance::Propagated;
          to->e_source_row = from->row;
          changed = true;
        } else if (src.e_universal && dst.e_universal && *src.e_universal != *dst.e_universal &&
                   reported.insert({src.row, dst.row}).second) {
          census.internal.entries.push_back(
              {"census", dst.row, "e", to_string(*dst.e_universal), to_string(*src.e_universal),
               "covering conservation: row " + std::to_string(src.row) + " lifts to row " + std::to_string(dst.row) +
                   " but their Euler numbers differ"});
        }
      }
    }
  }
}

}  // namespace

Census build_census(int n, bool linear_only, unsigned jobs) {
  Census census;
  census.dim = n;
  census.linear_only = linear_only;

  std::vector<CensusRow> rows;
  rows.push_back(fixture_row(infinity_completion(n)));
  if (n == 1) rows.push_back(fixture_row(parse_signature("[2,2,inf]", 1)));

  const auto sigs = enumerate_cy(n, linear_only, jobs);
  std::vector<std::optional<CensusRow>> computed(sigs.size());
  parallel_for(sigs.size(), jobs, [&](std::size_t i) { computed[i] = computed_row(sigs[i]); });
  for (auto& r : computed) rows.push_back(std::move(*r));

  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].row = static_cast<int>(i + 1);
  census.rows = std::move(rows);
  attach_coverings(census);
  propagate_euler(census);
  return census;
}

}  // namespace orbi
