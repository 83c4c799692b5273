#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace orbi {

/// Integer relation matrix: one row per relation, one column per generator.
template <typename Scalar>
using IntMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline mpz_class abs_value(const mpz_class& v) { return abs(v); }
inline std::int64_t abs_value(std::int64_t v) { return v < 0 ? -v : v; }

inline bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
inline bool is_zero(std::int64_t v) { return v == 0; }

// Position of the nonzero entry of least absolute value in the trailing
// block starting at (t, t); returns false when the block is zero.
template <typename Scalar>
bool smallest_pivot(const IntMatrix<Scalar>& a, Eigen::Index t, Eigen::Index& pr, Eigen::Index& pc) {
  bool found = false;
  Scalar best{};
  for (Eigen::Index j = t; j < a.cols(); ++j) {
    for (Eigen::Index i = t; i < a.rows(); ++i) {
      if (is_zero(a(i, j))) continue;
      Scalar v = abs_value(a(i, j));
      if (!found || v < best) {
        best = v;
        pr = i;
        pc = j;
        found = true;
      }
    }
  }
  return found;
}

}  // namespace detail

/// Diagonal of the Smith normal form of `a`, one entry per column
/// (generator): d_1 | d_2 | ..., non-negative, zeros last. The group
/// presented by `a` is ⊕ Z/d_i.
///
/// Pivoting uses the least nonzero absolute value in the remaining block,
/// then clears its row and column by division with remainder; a remainder
/// becomes the next pivot. Divisibility is restored by folding an offending
/// row into the pivot row.
template <typename Scalar>
std::vector<Scalar> smith_diagonal(IntMatrix<Scalar> a) {
  using Eigen::Index;
  const Index rows = a.rows();
  const Index cols = a.cols();
  const Index steps = std::min(rows, cols);
  std::vector<Scalar> diag(static_cast<std::size_t>(cols), Scalar(0));

  for (Index t = 0; t < steps; ++t) {
    Index pr = t, pc = t;
    if (!detail::smallest_pivot(a, t, pr, pc)) break;
    a.row(t).swap(a.row(pr));
    a.col(t).swap(a.col(pc));

    while (true) {
      bool dirty = false;
      for (Index i = t + 1; i < rows; ++i) {
        if (detail::is_zero(a(i, t))) continue;
        Scalar q = a(i, t) / a(t, t);
        if (!detail::is_zero(q)) a.row(i) -= q * a.row(t);
        if (!detail::is_zero(a(i, t))) dirty = true;
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (detail::is_zero(a(t, j))) continue;
        Scalar q = a(t, j) / a(t, t);
        if (!detail::is_zero(q)) a.col(j) -= q * a.col(t);
        if (!detail::is_zero(a(t, j))) dirty = true;
      }
      if (dirty) {
        // a remainder smaller than the pivot is left in row or column t
        Index br = t, bc = t;
        Scalar best = detail::abs_value(a(t, t));
        for (Index i = t + 1; i < rows; ++i)
          if (!detail::is_zero(a(i, t)) && detail::abs_value(a(i, t)) < best) {
            best = detail::abs_value(a(i, t));
            br = i;
            bc = t;
          }
        for (Index j = t + 1; j < cols; ++j)
          if (!detail::is_zero(a(t, j)) && detail::abs_value(a(t, j)) < best) {
            best = detail::abs_value(a(t, j));
            br = t;
            bc = j;
          }
        a.row(t).swap(a.row(br));
        a.col(t).swap(a.col(bc));
        continue;
      }

      Index bad = -1;
      for (Index i = t + 1; i < rows && bad < 0; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (!detail::is_zero(a(i, j) % a(t, t))) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(t) += a.row(bad);
    }
    diag[static_cast<std::size_t>(t)] = detail::abs_value(a(t, t));
  }
  return diag;
}

}  // namespace orbi
