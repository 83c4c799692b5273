#include "orbicensus/euler.hpp"

#include <map>
#include <mutex>

#include "orbicensus/error.hpp"
#include "orbicensus/groups.hpp"
#include "orbicensus/uniformization.hpp"

namespace orbi {

namespace {

void require_linear_finite(const OrbifoldSignature& sig) {
  if (!sig.is_finite()) throw Error(ErrorCode::InfiniteMultiplicity, "orbifold Euler number needs finite multiplicities");
  if (!sig.is_linear())
    throw Error(ErrorCode::NonlinearLocus, "orbifold Euler number is computed only for linear loci");
}

// depth-first walk over strata: components taken so far, their product
void accumulate_strata(const std::vector<std::int64_t>& m, int n, std::size_t next, int depth,
                       const Integer& product, Rational& total) {
  const int r = static_cast<int>(m.size());
  total += Rational(e_complement(r - depth, n - depth), product);
  if (depth == n) return;
  for (std::size_t i = next; i < m.size(); ++i)
    accumulate_strata(m, n, i + 1, depth + 1, product * static_cast<long>(m[i]), total);
}

}  // namespace

Integer e_complement(int r, int n) {
  if (r < 0 || n < 0) throw Error(ErrorCode::Precondition, "e(r, n) needs r, n >= 0");
  static std::mutex mu;
  static std::map<std::pair<int, int>, Integer> memo;
  if (n == 0) return 1;
  if (r == 0) return n + 1;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find({r, n}); it != memo.end()) return it->second;
  }
  Integer v = e_complement(r - 1, n) - e_complement(r - 1, n - 1);
  std::lock_guard lock(mu);
  memo.emplace(std::pair{r, n}, v);
  return v;
}

Integer e_complement_closed(int r, int n) {
  if (r < 0 || n < 0) throw Error(ErrorCode::Precondition, "e(r, n) needs r, n >= 0");
  Integer c = binomial(r - 2, n);
  return n % 2 == 0 ? c : Integer(-c);
}

std::vector<Rational> s_vector(const OrbifoldSignature& sig) {
  std::vector<Rational> s;
  for (auto m : multiplicities(sig)) s.push_back(Rational(1) - Rational(1, m));
  return s;
}

std::vector<Rational> elementary_symmetric(const std::vector<Rational>& x, int k) {
  std::vector<Rational> e(static_cast<std::size_t>(k + 1), Rational(0));
  e[0] = 1;
  for (const auto& xi : x)
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * xi;
  return e;
}

Rational e_orb_formula(const OrbifoldSignature& sig) {
  require_linear_finite(sig);
  const int n = sig.dim();
  const auto e = elementary_symmetric(s_vector(sig), n);
  Rational total(0);
  for (int j = 0; j <= n; ++j) {
    Rational term = Rational(n + 1 - j) * e[static_cast<std::size_t>(j)];
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

Rational e_orb_stratified(const OrbifoldSignature& sig) {
  require_linear_finite(sig);
  Rational total(0);
  accumulate_strata(multiplicities(sig), sig.dim(), 0, 0, Integer(1), total);
  return total;
}

Integer e_universal(const OrbifoldSignature& sig) {
  require_linear_finite(sig);
  if (!is_uniformizable_prime_power(sig))
    throw Error(ErrorCode::NotUniformizable, render(sig) + " has no finite abelian smooth uniformization");
  const Rational e = e_orb_formula(sig) * Rational(orb_group_order_formula(sig));
  if (!e.is_integer())
    throw Error(ErrorCode::NonIntegerResult, "e_orb * |G| = " + e.str() + " is not an integer for " + render(sig));
  return e.numerator();
}

}  // namespace orbi
