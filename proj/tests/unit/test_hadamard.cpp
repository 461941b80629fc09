#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "infconv/core.hpp"
#include "infconv/fourier.hpp"
#include "infconv/gram.hpp"
#include "infconv/hadamard.hpp"

using namespace infconv;
using fixtures::error_code;

namespace {

ExpandingMatrix scalar(Int m) { return ExpandingMatrix(IMat::from_rows({{m}})); }

// Unitarity of (1/sqrt N) [exp(-2 pi i (R^{-1} b).l)] checked in double.
bool unitary_oracle(const ExpandingMatrix& R, const std::vector<IVec>& B, const std::vector<IVec>& L) {
  if (B.size() != L.size()) return false;
  const DMat Rinv = to_double(R.inverse());
  std::vector<DVec> pts;
  for (const auto& b : B) pts.push_back(Rinv * to_double(b));
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      std::complex<double> s = 0;
      for (const auto& p : pts) s += std::polar(1.0, -2 * M_PI * dot(p, to_double(L[i] - L[j])));
      if (std::abs(s) > 1e-9) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("mask phase matrix") {
  const auto th = mask_phase_matrix(scalar(4), {{0}, {2}}, {{0}, {1}});
  CHECK(th[0][0] == 0);
  CHECK(th[0][1] == 0);
  CHECK(th[1][0] == 0);
  CHECK(th[1][1] == Rational(1, 2));
  const auto p1 = fixtures::ex1_p1();
  for (const auto& row : mask_phase_matrix(p1.R, p1.B.digits(), *p1.L))
    for (const auto& x : row) {
      CHECK(4 % x.get_den().get_si() == 0);
      CHECK(x >= 0);
      CHECK(x < 1);
    }
  const auto zero = mask_phase_matrix(p1.R, p1.B.digits(), {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  for (const auto& row : zero) CHECK(row[0] == 0);
  CHECK(error_code([&] { mask_phase_matrix(p1.R, p1.B.digits(), {{0, 0}}); }) == ErrorCode::SizeMismatch);
}

TEST_CASE("admissibility fixtures") {
  CHECK(check_admissible(scalar(4), {{0}, {2}}, {{0}, {1}}).admissible);
  CHECK(check_admissible(fixtures::ex1_p1()).admissible);
  CHECK(check_admissible(fixtures::ex1_p2()).admissible);
  const auto c = check_admissible(scalar(3), {{0}, {2}}, {{0}, {1}});
  CHECK_FALSE(c.admissible);
  CHECK(c.max_offdiag == doctest::Approx(0.5));
  CHECK_FALSE(c.detail.empty());
  const auto f = check_admissible(scalar(3), {{0}, {2}}, {{0}, {1}}, CheckMode::Float);
  CHECK_FALSE(f.admissible);
  CHECK_FALSE(f.exact_verdict.has_value());
  CHECK(error_code([] { check_admissible(scalar(4), {{0}, {2}}, {{0}}); }) == ErrorCode::SizeMismatch);
  const AdmissiblePair bare("bare", scalar(4), DigitSet(std::vector<IVec>{{0}, {2}}));
  CHECK(error_code([&] { check_admissible(bare); }) == ErrorCode::MissingSpectrum);
}

TEST_CASE("exact and float modes agree with a direct unitarity check") {
  std::mt19937_64 gen(5);
  int admissible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Int m = 2 + static_cast<Int>(gen() % 7);
    const ExpandingMatrix R = scalar(m);
    std::set<IVec> Bs, Ls;
    const std::size_t n = 2 + gen() % 2;
    while (Bs.size() < n) Bs.insert({static_cast<Int>(gen() % 12)});
    while (Ls.size() < n) Ls.insert({static_cast<Int>(gen() % 12)});
    std::vector<IVec> B(Bs.begin(), Bs.end()), L(Ls.begin(), Ls.end());
    const bool oracle = unitary_oracle(R, B, L);
    CHECK(check_admissible(R, B, L, CheckMode::Exact).admissible == oracle);
    CHECK(check_admissible(R, B, L, CheckMode::Float).admissible == oracle);
    admissible += oracle;
  }
  CHECK(admissible > 10);
}

TEST_CASE("sum of |m_B|^2 over L is 1 for admissible pairs") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& pair : {fixtures::ex1_p1(), fixtures::ex1_p2(), fixtures::jp_pair()}) {
    const DMat Rinvt = to_double(pair.R.inverse_transpose());
    for (int i = 0; i < 100; ++i) {
      DVec xi(pair.dim());
      for (auto& x : xi) x = u(gen);
      double s = 0;
      for (const auto& l : *pair.L) {
        DVec arg = xi;
        for (std::size_t c = 0; c < arg.size(); ++c) arg[c] += static_cast<double>(l[c]);
        s += std::norm(mask_eval(pair.B, Rinvt * arg));
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("admissibility matches the Gram identity of the one-level measure") {
  for (const auto& pair : {fixtures::ex1_p1(), fixtures::ex1_p2(), fixtures::jp_pair()}) {
    const auto mu = digit_measure(pair.B, pair.R.inverse());
    CHECK(gram_matrix(mu, *pair.L).identity());
  }
  const auto mu = digit_measure(DigitSet(std::vector<IVec>{{0}, {2}}), scalar(3).inverse());
  CHECK_FALSE(gram_matrix(mu, std::vector<IVec>{{0}, {1}}).identity());
}

TEST_CASE("spectrum search") {
  CHECK(find_spectra(scalar(3), {{0}, {2}}, 10).empty());
  const auto jp = find_spectra(scalar(4), {{0}, {2}}, 10);
  CHECK(std::find(jp.begin(), jp.end(), std::vector<IVec>{{0}, {1}}) != jp.end());
  CHECK(jp == std::vector<std::vector<IVec>>{{{0}, {1}}, {{0}, {3}}});
  const auto two = find_spectra(scalar(2), {{0}, {1}}, 10);
  CHECK(two == std::vector<std::vector<IVec>>{{{0}, {1}}});
  CHECK(find_spectra(scalar(4), {{0}, {2}}, 1).size() == 1);

  const auto p1 = fixtures::ex1_p1();
  const auto s1 = find_spectra(p1.R, p1.B.digits(), 100);
  REQUIRE_FALSE(s1.empty());
  for (const auto& L : s1) {
    CHECK(L.front() == IVec{0, 0});
    CHECK(unitary_oracle(p1.R, p1.B.digits(), L));
  }
  CHECK(std::is_sorted(s1.begin(), s1.end()));
  // The given L1 is one of them up to residues.
  std::set<IVec> given;
  for (const auto& l : *p1.L) given.insert(canonical_residue(p1.R, l));
  bool found = false;
  for (const auto& L : s1) found = found || std::set<IVec>(L.begin(), L.end()) == given;
  CHECK(found);
}

TEST_CASE("spectrum search is invariant under translating the digits") {
  for (const auto& pair : {fixtures::ex1_p1(), fixtures::ex1_p2(), fixtures::jp_pair()}) {
    const auto base = find_spectra(pair.R, pair.B.digits(), 50);
    IVec t(pair.dim(), 0);
    t[0] = 5;
    t.back() -= 3;
    CHECK(find_spectra(pair.R, translate_digits(pair.B.digits(), t), 50) == base);
  }
}

TEST_CASE("composition") {
  const HadamardTriple jp{IMat::from_rows({{4}}), {{0}, {2}}, {{0}, {1}}};
  const auto one = compose_pairs({jp});
  CHECK(one.R == jp.R);
  CHECK(one.B == jp.B);
  CHECK(one.L == jp.L);
  const auto two = compose_pairs({jp, jp});
  CHECK(two.R == IMat::from_rows({{16}}));
  CHECK(two.B == std::vector<IVec>{{0}, {2}, {8}, {10}});
  CHECK(two.L == std::vector<IVec>{{0}, {1}, {4}, {5}});

  const auto p1 = fixtures::ex1_p1(), p2 = fixtures::ex1_p2();
  const auto c = compose_pairs({{p1.R.matrix(), p1.B.digits(), *p1.L}, {p2.R.matrix(), p2.B.digits(), *p2.L}});
  const ExpandingMatrix R(c.R);
  CHECK(c.L.size() == 12);
  CHECK(check_admissible(R, c.B, c.L).admissible);
  std::set<IVec> classes;
  for (const auto& l : c.L) classes.insert(canonical_residue(R, l));
  CHECK(classes.size() == 12);
}

TEST_CASE("translations and pushforward") {
  const std::vector<IVec> L{{0}, {1}};
  CHECK(translate_spectrum(L, {0}) == L);
  CHECK(check_admissible(scalar(4), {{0}, {2}}, translate_spectrum(L, {-1})).admissible);
  CHECK(check_admissible(scalar(4), translate_digits({{0}, {2}}, {1}), L).admissible);
  CHECK(pushforward_spectrum(L, QMat::identity(1)) == std::vector<QVec>{{Rational(0)}, {Rational(1)}});
  CHECK(pushforward_spectrum(L, to_rational(IMat::from_rows({{4}}))) ==
        std::vector<QVec>{{Rational(0)}, {Rational(1, 4)}});
  CHECK(pushforward_spectrum(std::vector<IVec>{{0}, {1}, {4}, {5}}, to_rational(IMat::from_rows({{16}}))) ==
        std::vector<QVec>{{Rational(0)}, {Rational(1, 16)}, {Rational(1, 4)}, {Rational(5, 16)}});
  CHECK(error_code([] { pushforward_spectrum(std::vector<IVec>{{0}}, QMat(1, 1)); }) == ErrorCode::NotInvertible);
}

TEST_CASE("mask vanishing") {
  CHECK(mask_vanishes(scalar(4), {{0}, {2}}, {1}));
  CHECK_FALSE(mask_vanishes(scalar(4), {{0}, {2}}, {2}));
  const auto p1 = fixtures::ex1_p1();
  CHECK(mask_vanishes(p1.R, p1.B.digits(), {2, 0}));
}
