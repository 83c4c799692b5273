#include "orbicensus/uniformization.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "orbicensus/arith.hpp"
#include "orbicensus/error.hpp"

namespace orbi {

namespace {

void require_abelian_domain(const OrbifoldSignature& sig) {
  if (sig.dim() < 2)
    throw Error(ErrorCode::DimOne, "uniformization criterion applies for n >= 2; dimension-1 data comes from fixtures");
  if (!sig.is_finite()) throw Error(ErrorCode::InfiniteMultiplicity, "uniformization criterion needs finite multiplicities");
}

std::vector<std::int64_t> primes_of(const FVector& f) {
  std::vector<std::int64_t> primes;
  for (auto x : f)
    for (auto [p, e] : factorize(x)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

// exponents sorted descending, zero-padded to at least n+1 entries
std::vector<int> padded_exponents(const FVector& f, std::int64_t p, int n) {
  std::vector<int> ex;
  for (auto x : f) ex.push_back(valuation(x, p));
  std::sort(ex.begin(), ex.end(), std::greater<>());
  if (ex.size() < static_cast<std::size_t>(n + 1)) ex.resize(static_cast<std::size_t>(n + 1), 0);
  return ex;
}

}  // namespace

std::vector<int> PrimeCertificate::sorted_exponents() const {
  auto s = exponents;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

UniformizationVerdict explain_uniformization(const OrbifoldSignature& sig) {
  require_abelian_domain(sig);
  const int n = sig.dim();
  const FVector f = f_vector(sig);
  UniformizationVerdict v;
  for (auto p : primes_of(f)) {
    const auto ex = padded_exponents(f, p, n);
    if (ex[0] != ex[static_cast<std::size_t>(n)]) {
      // p^(ex[n]+1) divides ex[0]'s f but at most n of the f_i
      const int e = ex[static_cast<std::size_t>(n)] + 1;
      const int count = static_cast<int>(std::count_if(ex.begin(), ex.end(), [e](int x) { return x >= e; }));
      v.failure = FailingPrimePower{p, e, count};
      return v;
    }
    PrimeCertificate cert{p, ex[0], {}};
    for (auto x : f) cert.exponents.push_back(valuation(x, p));
    v.certificate.push_back(std::move(cert));
  }
  v.uniformizable = true;
  return v;
}

bool is_uniformizable_prime_power(const OrbifoldSignature& sig) { return explain_uniformization(sig).uniformizable; }

bool is_uniformizable_lcm(const OrbifoldSignature& sig) {
  require_abelian_domain(sig);
  const FVector f = f_vector(sig);
  std::map<std::int64_t, int> counts;
  for (auto x : f) ++counts[x];
  std::vector<std::pair<std::int64_t, int>> values(counts.begin(), counts.end());
  Integer total = 1;
  for (auto x : f) total = lcm(total, Integer(static_cast<long>(x)));
  const int remove = std::min<int>(sig.dim(), static_cast<int>(f.size()));

  // Removing B only matters through how many copies of each distinct value
  // it takes; walk those count vectors instead of the C(r, n) subsets.
  std::function<bool(std::size_t, int, const Integer&)> all_ok = [&](std::size_t idx, int left,
                                                                       const Integer& lcm_kept) -> bool {
    if (idx == values.size()) return left != 0 || lcm_kept == total;
    const auto [value, count] = values[idx];
    for (int take = 0; take <= std::min(count, left); ++take) {
      const Integer next = take < count ? Integer(lcm(lcm_kept, Integer(static_cast<long>(value)))) : lcm_kept;
      if (!all_ok(idx + 1, left - take, next)) return false;
    }
    return true;
  };
  return all_ok(0, remove, Integer(1));
}

std::vector<PrimeCertificate> factorization_certificate(const OrbifoldSignature& sig) {
  auto v = explain_uniformization(sig);
  if (!v.uniformizable) {
    const auto& f = *v.failure;
    throw Error(ErrorCode::NotUniformizable, std::to_string(f.prime) + "^" + std::to_string(f.exponent) +
                                                 " divides only " + std::to_string(f.divisible_count) +
                                                 " of the f_i");
  }
  return v.certificate;
}

FVector reconstruct_f_vector(const std::vector<PrimeCertificate>& certificate, std::size_t components) {
  FVector f(components, 1);
  for (const auto& c : certificate)
    for (std::size_t i = 0; i < components && i < c.exponents.size(); ++i)
      for (int k = 0; k < c.exponents[i]; ++k) f[i] *= c.prime;
  return f;
}

}  // namespace orbi
