#include "infconv/cyclotomic.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace infconv {

namespace {

constexpr std::uint64_t kMaxRadical = 2'000'000;

std::vector<Integer> poly_subst_power(const std::vector<Integer>& p, std::uint64_t q) {
  std::vector<Integer> out((p.size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i * q] = p[i];
  return out;
}

// Exact division by a monic integer polynomial; the remainder must vanish.
std::vector<Integer> poly_divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const Integer c = num[i];
    if (c == 0) continue;
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Integer radical(const Integer& n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "radical of a non-positive integer");
  Integer rest = n, rad = 1;
  for (Integer p = 2; p * p <= rest; ++p) {
    if (mpz_probab_prime_p(rest.get_mpz_t(), 30) == 2) break;
    if (rest % p != 0) continue;
    rad *= p;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) rad *= rest;
  return rad;
}

const std::vector<Integer>& cyclotomic_polynomial(std::uint64_t n) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::vector<Integer>> cache;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic polynomial of order 0");
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // Phi_n(x) = Phi_rad(x^{n/rad}); Phi_{mq}(x) = Phi_m(x^q) / Phi_m(x) for a new prime q.
  std::vector<Integer> phi{-1, 1};
  std::uint64_t m = 1;
  for (auto q : prime_factors(n)) {
    phi = poly_divide_exact(poly_subst_power(phi, q), phi);
    m *= q;
  }
  if (n / m > 1) phi = poly_subst_power(phi, n / m);
  return cache.emplace(n, std::move(phi)).first->second;
}

CyclotomicSum::CyclotomicSum(Integer modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic modulus must be positive");
}

CyclotomicSum CyclotomicSum::from_phases(const std::vector<Rational>& phases, const std::vector<Rational>& weights) {
  if (phases.size() != weights.size()) throw Error(ErrorCode::SizeMismatch, "phases and weights differ in count");
  Integer D = 1;
  for (const auto& t : phases) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), t.get_den_mpz_t());
  CyclotomicSum s(D);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const Integer e = phases[i].get_num() * (D / phases[i].get_den());
    s.add(e, weights[i]);
  }
  return s;
}

void CyclotomicSum::add(const Integer& exponent, const Rational& coeff) {
  Integer e;
  mpz_fdiv_r(e.get_mpz_t(), exponent.get_mpz_t(), modulus_.get_mpz_t());
  auto& c = terms_[e];
  c += coeff;
  if (c == 0) terms_.erase(e);
}

bool CyclotomicSum::is_zero() const {
  if (terms_.empty()) return true;
  // Shrink to the true order of the roots that appear.
  Integer g = modulus_;
  for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  const Integer D = modulus_ / g;
  if (D == 1) return false;  // a single nonzero rational

  const Integer r = radical(D);
  if (r > kMaxRadical) throw Error(ErrorCode::Overflow, "cyclotomic order has too large a radical");
  const Integer s = D / r;
  const std::size_t rr = r.get_ui();
  const auto& phi = cyclotomic_polynomial(rr);
  const std::size_t deg = phi.size() - 1;

  std::map<Integer, std::vector<Rational>> classes;
  for (const auto& [e0, c] : terms_) {
    const Integer e = e0 / g;
    Integer q, t;
    mpz_fdiv_qr(q.get_mpz_t(), t.get_mpz_t(), e.get_mpz_t(), s.get_mpz_t());
    auto& poly = classes[t];
    if (poly.empty()) poly.assign(rr, Rational(0));
    poly[q.get_ui()] += c;
  }
  for (auto& [t, poly] : classes) {
    for (std::size_t i = poly.size(); i-- > deg;) {
      const Rational c = poly[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
    }
    for (std::size_t i = 0; i < deg; ++i)
      if (poly[i] != 0) return false;
  }
  return true;
}

std::complex<double> CyclotomicSum::value() const {
  std::complex<double> acc = 0.0;
  const double D = modulus_.get_d();
  for (const auto& [e, c] : terms_) {
    const double ang = 2.0 * std::numbers::pi * (e.get_d() / D);
    acc += c.get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

}  // namespace infconv
