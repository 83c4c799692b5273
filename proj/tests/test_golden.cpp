#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "orbicensus/error.hpp"
#include "orbicensus/golden.hpp"

using namespace orbi;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(ORBICENSUS_DATA_DIR) / name; }

const ErrataEntry* find(const ErrataReport& r, int row, const char* field) {
  for (const auto& e : r.entries)
    if (e.row_id == row && e.field == field) return &e;
  return nullptr;
}

}  // namespace

TEST_SUITE("golden") {

TEST_CASE("every shipped table loads and all mismatches are in the ledger") {
  for (const char* name : {"p1.json", "k3.json", "cy3.json", "linear_p4.json", "linear_p5.json", "linear_p6.json",
                           "linear_p7.json"}) {
    CAPTURE(name);
    const auto g = load_golden(data(name));
    const Census c = build_census(g.dim, g.linear_only);
    const auto report = compare_to_golden(c, g);
    CHECK(unexplained(report).empty());
    for (const auto& e : report.entries) CHECK_FALSE(e.justification.empty());
  }
}

TEST_CASE("CY3 column swap and convention errata") {
  const auto g = load_golden(data("cy3.json"));
  const auto report = compare_to_golden(build_census(3), g);
  const auto* pi1 = find(report, 24, "pi1");
  REQUIRE(pi1 != nullptr);
  CHECK(pi1->printed_value == "38");
  CHECK(pi1->computed_value == "6");
  CHECK(pi1->justification.find("swapped") != std::string::npos);
  const auto* delta = find(report, 8, "delta");
  REQUIRE(delta != nullptr);
  CHECK(delta->computed_value == "40");
  CHECK(delta->justification.find("linear-system") != std::string::npos);
  const auto* cov = find(report, 9, "coverings");
  REQUIRE(cov != nullptr);
  CHECK(cov->computed_value == "[1,1,3,3,3,3]{29}");
}

TEST_CASE("linear-system convention moves the delta errata") {
  const auto g = load_golden(data("cy3.json"));
  const auto report = compare_to_golden(build_census(3), g, DeltaConvention::LinearSystem);
  CHECK(find(report, 8, "delta") == nullptr);
  CHECK(find(report, 14, "delta") != nullptr);
  CHECK_FALSE(unexplained(report).empty());
}

TEST_CASE("K3 audit") {
  const auto g = load_golden(data("k3.json"));
  const auto report = compare_to_golden(build_census(2), g);
  CHECK(report.entries.size() == 2);
  CHECK(report.unverified.size() == 3);
  REQUIRE(find(report, 10, "pi1") != nullptr);
  CHECK(find(report, 10, "pi1")->computed_value == "16");
}

TEST_CASE("a fresh mismatch is not explained") {
  auto g = load_golden(data("k3.json"));
  for (auto& r : g.rows)
    if (r.row == 14) r.pi1 = "3";
  const auto report = compare_to_golden(build_census(2), g);
  const auto fresh = unexplained(report);
  REQUIRE(fresh.size() == 1);
  CHECK(fresh[0].row_id == 14);
}

TEST_CASE("schema and I/O errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code([] { load_golden("/nonexistent/golden.json"); }) == ErrorCode::Io);
  CHECK(code([] { parse_golden("{not json"); }) == ErrorCode::Schema);
  CHECK(code([] { parse_golden(R"({"table":"x","dim":2})"); }) == ErrorCode::Schema);
  CHECK(code([] { parse_golden(R"({"table":"x","dim":2,"rows":[{"row":1}]})"); }) == ErrorCode::Schema);
  CHECK(code([] {
          parse_golden(R"({"table":"x","dim":2,"rows":[{"row":1,"signature":"[2]","d":1,"e":null,"pi1":"big",)"
                       R"("delta":null,"coverings":[]}]})");
        }) == ErrorCode::Schema);
  const auto ok = parse_golden(
      R"({"table":"x","dim":2,"rows":[{"row":1,"signature":"[2_6]","d":6,"e":24,"pi1":2,"delta":19,"coverings":[]}]})");
  CHECK(ok.rows.size() == 1);
  CHECK(ok.complete);
}

TEST_CASE("dimension mismatch is a precondition error") {
  const auto g = load_golden(data("k3.json"));
  CHECK_THROWS_AS(compare_to_golden(build_census(3), g), Error);
}

}
