#pragma once

#include <complex>
#include <map>
#include <vector>

#include "infconv/linalg.hpp"

namespace infconv {

/// Product of the distinct primes dividing n (n >= 1).
Integer radical(const Integer& n);

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree
/// first. Results are cached; safe to call from several threads.
const std::vector<Integer>& cyclotomic_polynomial(std::uint64_t n);

/// A rational combination sum_e c_e zeta^e of powers of zeta = exp(2 pi i / D).
/// is_zero() decides exactly whether the sum vanishes.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(Integer modulus);

  /// Sum_j w_j exp(2 pi i phase_j); the modulus is the lcm of the phase denominators.
  static CyclotomicSum from_phases(const std::vector<Rational>& phases, const std::vector<Rational>& weights);

  /// Adds c * zeta^exponent; the exponent is reduced mod D.
  void add(const Integer& exponent, const Rational& coeff);

  const Integer& modulus() const noexcept { return modulus_; }
  const std::map<Integer, Rational>& terms() const noexcept { return terms_; }

  bool is_zero() const;
  std::complex<double> value() const;

 private:
  Integer modulus_;
  std::map<Integer, Rational> terms_;
};

}  // namespace infconv
