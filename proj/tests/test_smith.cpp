#include <doctest.h>

#include "oracles.hpp"
#include "orbicensus/groups.hpp"
#include "orbicensus/smith.hpp"

using namespace orbi;

namespace {

oracle::Matrix to_oracle(const RelationMatrix& m) {
  oracle::Matrix out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<Integer> row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

void check_against_minors(const RelationMatrix& m) {
  const auto got = smith_normal_form(m);
  const auto want = oracle::smith_by_minors(to_oracle(m));
  REQUIRE(got.size() == static_cast<std::size_t>(m.cols()));
  for (std::size_t i = 0; i < want.size(); ++i) REQUIRE(got[i] == want[i]);
  for (std::size_t i = want.size(); i < got.size(); ++i) REQUIRE(got[i] == 0);
  for (std::size_t i = 1; i < got.size(); ++i)
    if (got[i] != 0) REQUIRE(got[i] % got[i - 1] == 0);
}

}  // namespace

TEST_SUITE("smith") {

TEST_CASE("small hand examples") {
  RelationMatrix m(2, 2);
  m << 2, 0, 0, 3;
  CHECK(smith_normal_form(m) == std::vector<Integer>{1, 6});
  RelationMatrix z = RelationMatrix::Constant(2, 3, Integer(0));
  CHECK(smith_normal_form(z) == std::vector<Integer>{0, 0, 0});
  RelationMatrix n(1, 2);
  n << -4, 6;
  CHECK(smith_normal_form(n) == std::vector<Integer>{2, 0});
}

TEST_CASE("int64 scalar instantiation agrees with mpz") {
  IntMatrix<std::int64_t> a(3, 3);
  a << 2, 4, 4, -6, 6, 12, 10, -4, -16;
  RelationMatrix b(3, 3);
  b << 2, 4, 4, -6, 6, 12, 10, -4, -16;
  const auto x = smith_diagonal<std::int64_t>(a);
  const auto y = smith_normal_form(b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(Integer(static_cast<long>(x[i])) == y[i]);
  CHECK(x == std::vector<std::int64_t>{2, 6, 12});
}

TEST_CASE("agrees with determinantal divisors on random matrices (property)") {
  oracle::Gen gen(2024);
  for (int t = 0; t < 1000; ++t) {
    const int rows = gen.uniform(1, 5);
    const int cols = gen.uniform(1, 5);
    const int span = gen.coin(0.3) ? 40 : 8;
    RelationMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gen.coin(0.25) ? 0 : gen.uniform(-span, span);
    check_against_minors(m);
  }
}

TEST_CASE("relation matrices of signatures agree with determinantal divisors") {
  oracle::Gen gen(7);
  for (int t = 0; t < 300; ++t) {
    const auto sig = gen.signature(gen.uniform(2, 4), 4, false);
    check_against_minors(orb_relation_matrix(sig));
  }
}

}
