#include <doctest.h>

#include "oracles.hpp"
#include "orbicensus/error.hpp"
#include "orbicensus/groups.hpp"
#include "orbicensus/uniformization.hpp"

using namespace orbi;

TEST_SUITE("uniformization") {

TEST_CASE("examples") {
  CHECK(is_uniformizable_prime_power(parse_signature("[2,8,8,8,8]", 3)));
  CHECK(is_uniformizable_lcm(parse_signature("[2,5,10,10,10]", 3)));
  CHECK(is_uniformizable_prime_power(parse_signature("[2_2,3_3]", 2)));
  CHECK_FALSE(is_uniformizable_lcm(parse_signature("[2,3]", 2)));
  CHECK_FALSE(is_uniformizable_prime_power(parse_signature("[2,3]", 2)));
  for (int n = 2; n <= 5; ++n) {
    CHECK_FALSE(is_uniformizable_prime_power(parse_signature("[3_2]", n)));
    CHECK(is_uniformizable_prime_power(parse_signature("[3_6]", n)));
  }
}

TEST_CASE("failure names the prime power") {
  const auto v = explain_uniformization(parse_signature("[2,3,7]", 2));
  REQUIRE_FALSE(v.uniformizable);
  CHECK(v.failure->prime == 2);
  CHECK(v.failure->exponent == 1);
  CHECK(v.failure->divisible_count == 1);
  try {
    factorization_certificate(parse_signature("[4,4,2]", 2));
    FAIL("expected NotUniformizable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUniformizable);
  }
}

TEST_CASE("certificates") {
  const auto s = parse_signature("[2,8,8,8,8]", 3);
  const auto cert = factorization_certificate(s);
  REQUIRE(cert.size() == 1);
  CHECK(cert[0].prime == 2);
  CHECK(cert[0].alpha == 3);
  CHECK(cert[0].sorted_exponents() == std::vector<int>{3, 3, 3, 3, 1});
  CHECK(reconstruct_f_vector(cert, s.size()) == f_vector(s));
  CHECK(factorization_certificate(parse_signature("[5_5]", 3)).empty());
}

TEST_CASE("domain errors") {
  try {
    is_uniformizable_prime_power(parse_signature("[2,2,2,2]", 1));
    FAIL("expected DimOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimOne);
  }
  try {
    is_uniformizable_lcm(parse_signature("[inf,inf,inf]", 2));
    FAIL("expected InfiniteMultiplicity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfiniteMultiplicity);
  }
}

TEST_CASE("prime-power and lcm forms agree on every f-multiset with r <= 8, f <= 12, n <= 4") {
  // uniformizability only sees the f-multiset; realize f = 1 as [2_2]
  long cases = 0;
  std::vector<std::int64_t> f;
  std::function<void(std::int64_t)> rec = [&](std::int64_t lo) {
    if (!f.empty()) {
      std::vector<LocusComponent> comps;
      for (auto x : f) comps.push_back(x == 1 ? LocusComponent{2, Multiplicity(2)} : LocusComponent{1, Multiplicity(x)});
      for (int n = 2; n <= 4; ++n) {
        const OrbifoldSignature s(n, comps);
        const bool a = is_uniformizable_prime_power(s);
        REQUIRE(a == is_uniformizable_lcm(s));
        ++cases;
      }
    }
    if (f.size() == 8) return;
    for (std::int64_t x = lo; x <= 12; ++x) {
      f.push_back(x);
      rec(x);
      f.pop_back();
    }
  };
  rec(1);
  CHECK(cases > 300000);
}

TEST_CASE("prime-power form, lcm form and literal subset scan agree (property)") {
  oracle::Gen gen(31337);
  for (int t = 0; t < 2000; ++t) {
    const auto s = gen.signature(gen.uniform(2, 5), 9, false);
    const bool a = is_uniformizable_prime_power(s);
    REQUIRE(a == is_uniformizable_lcm(s));
    REQUIRE(a == oracle::uniformizable_brute(s));
    if (a) REQUIRE(reconstruct_f_vector(factorization_certificate(s), s.size()) == f_vector(s));
    if (static_cast<int>(s.size()) <= s.dim()) {
      const auto f = f_vector(s);
      REQUIRE(a == std::all_of(f.begin(), f.end(), [](std::int64_t x) { return x == 1; }));
    }
  }
}

TEST_CASE("lcm of f divides the product of multiplicities (property)") {
  oracle::Gen gen(4);
  for (int t = 0; t < 1000; ++t) {
    const auto s = gen.signature(gen.uniform(2, 4), 8, false);
    Integer prod = 1, l = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      prod *= static_cast<long>(s[i].multiplicity.value());
      l = oracle::lcm_z(l, Integer(static_cast<long>(f_vector(s)[i])));
    }
    REQUIRE(prod % l == 0);
    REQUIRE(orb_group_order_formula(s) * l == prod);
  }
}

}
