#include <doctest.h>

#include "oracles.hpp"
#include "orbicensus/error.hpp"
#include "orbicensus/signature.hpp"

using namespace orbi;

TEST_SUITE("signature") {

TEST_CASE("canonical order puts higher degree first") {
  const auto sig = parse_signature("[3,3,3,2_2]", 2);
  CHECK(render(sig) == "[2_2,3,3,3]");
  CHECK(render(parse_signature("[2,6,6,6]", 2)) == "[6,6,6,2]");
  CHECK(render(parse_signature("[3_3, 2_4]", 3)) == "[2_4,3_3]");
}

TEST_CASE("infinity spellings and rendering styles") {
  const auto a = parse_signature("[∞,2,2]", 1);
  const auto b = parse_signature("[ 2 , inf , 2 ]", 1);
  CHECK(a == b);
  CHECK(render(a) == "[inf,2,2]");
  CHECK(render(a, RenderStyle::Human) == "[∞,2,2]");
  CHECK_FALSE(a.is_finite());
}

TEST_CASE("render and parse round trip") {
  for (const char* text : {"[2_8]", "[10,10,10,5,2]", "[2_4,2_2,2_2]", "[inf,inf,inf]"}) {
    const auto sig = parse_signature(text, 3);
    CHECK(render(sig) == text);
    CHECK(parse_signature(render(sig), 3) == sig);
  }
}

TEST_CASE("grammar errors carry a column") {
  auto column_of = [](const char* text) -> std::size_t {
    try {
      parse_components(text);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column_of("[2,,3]") == 4);
  CHECK(column_of("2,3]") == 1);
  CHECK(column_of("[2,3") > 0);
  CHECK(column_of("[2,3]]") == 6);
  CHECK(column_of("[∞,x]") == 4);
}

TEST_CASE("semantic errors") {
  CHECK_THROWS_AS(parse_signature("[1,2]", 2), Error);
  try {
    parse_signature("[1,2]", 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMultiplicity);
  }
  try {
    parse_signature("[2_0]", 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDegree);
  }
  try {
    parse_signature("[inf_2]", 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDegree);
  }
  try {
    parse_signature("[]", 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyLocus);
  }
  CHECK_THROWS_AS(parse_signature("[2,2]", 0), Error);
}

TEST_CASE("f-vector, degree and stratum values") {
  const auto sig = parse_signature("[6_2,3,3]", 2);
  CHECK(total_degree(sig) == 4);
  CHECK(f_vector(sig) == FVector{3, 3, 3});
  const std::vector<int> b{1, 2};
  CHECK(stratum_b_value(sig, b) == 9);
  const std::vector<int> too_big{0, 1, 2};
  try {
    stratum_b_value(sig, too_big);
    FAIL("expected SubsetTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SubsetTooLarge);
  }
}

TEST_CASE("written positions map onto canonical indices") {
  const auto written = parse_components("[2_2,3,3,3]");
  const OrbifoldSignature sig(2, written);
  const std::vector<int> pos{1, 2, 3};
  CHECK(map_positions(written, sig, pos) == IndexSet{1, 2, 3});
  const auto w2 = parse_components("[2,6,6,6]");
  const OrbifoldSignature s2(2, w2);
  const std::vector<int> first{0};
  CHECK(map_positions(w2, s2, first) == IndexSet{3});
  const std::vector<int> repeated{1, 1};
  CHECK_THROWS_AS(map_positions(w2, s2, repeated), Error);
}

TEST_CASE("canonicalization is idempotent and order independent (property)") {
  oracle::Gen gen(11);
  for (int i = 0; i < 1000; ++i) {
    const auto sig = gen.signature(gen.uniform(1, 5), 8, false);
    std::vector<LocusComponent> comps(sig.components().begin(), sig.components().end());
    std::shuffle(comps.begin(), comps.end(), gen.engine());
    const OrbifoldSignature again(sig.dim(), comps);
    REQUIRE(again == sig);
    REQUIRE(canonicalize(sig) == sig);
    REQUIRE(parse_signature(render(sig), sig.dim()) == sig);
    REQUIRE(std::is_sorted(sig.components().begin(), sig.components().end(), std::greater<>()));
  }
}

}
