#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orbicensus/signature.hpp"

namespace orbi {

/// Exponents of one prime across the f-vector, positionally aligned with
/// the components. `alpha` is the largest exponent.
struct PrimeCertificate {
  std::int64_t prime = 0;
  int alpha = 0;
  std::vector<int> exponents;

  /// Exponents in descending order.
  std::vector<int> sorted_exponents() const;
};

/// A prime power dividing some f_i but fewer than n+1 of them.
struct FailingPrimePower {
  std::int64_t prime = 0;
  int exponent = 0;
  int divisible_count = 0;  // how many f_i it divides
};

struct UniformizationVerdict {
  bool uniformizable = false;
  std::optional<FailingPrimePower> failure;
  std::vector<PrimeCertificate> certificate;  // filled when uniformizable
};

bool is_uniformizable_prime_power(const OrbifoldSignature& sig);
bool is_uniformizable_lcm(const OrbifoldSignature& sig);

/// Per-prime decomposition of the f-vector; throws NotUniformizable.
std::vector<PrimeCertificate> factorization_certificate(const OrbifoldSignature& sig);

UniformizationVerdict explain_uniformization(const OrbifoldSignature& sig);

/// Componentwise product of the certificate tuples.
FVector reconstruct_f_vector(const std::vector<PrimeCertificate>& certificate, std::size_t components);

}  // namespace orbi
