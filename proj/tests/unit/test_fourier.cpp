#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "infconv/core.hpp"
#include "infconv/fourier.hpp"
#include "infconv/spectrum.hpp"

using namespace infconv;
using fixtures::error_code;

namespace {

// Explicit finite sum over the exact atoms of mu_n.
Complex atom_sum(const DiscreteMeasure& mu, const DVec& xi) {
  Complex s = 0;
  for (const auto& a : mu.atoms()) s += a.weight.get_d() * std::polar(1.0, -2 * M_PI * dot(to_double(a.point), xi));
  return s;
}

DVec random_xi(std::mt19937_64& gen, std::size_t d, double r = 3.0) {
  std::uniform_real_distribution<double> u(-r, r);
  DVec x(d);
  for (auto& v : x) v = u(gen);
  return x;
}

}  // namespace

TEST_CASE("mask values") {
  const DVec zero{0.0, 0.0};
  CHECK(std::abs(mask_eval(fixtures::ex1_p1().B, zero) - 1.0) < 1e-15);
  CHECK(std::abs(mask_eval(DigitSet(std::vector<IVec>{{0}, {2}}), DVec{0.25})) < 1e-15);
  const DVec at = to_double(fixtures::ex1_p1().R.inverse_transpose() * IVec{2, 0});
  CHECK(at == DVec{0.5, 0.0});
  CHECK(std::abs(mask_eval(fixtures::ex1_p1().B, at)) < 1e-15);

  std::mt19937_64 gen(1);
  const auto& B = fixtures::ex1_p2().B;
  for (int i = 0; i < 50; ++i) {
    const DVec xi = random_xi(gen, 2);
    const Complex v = mask_eval(B, xi);
    CHECK(std::abs(v) <= 1.0 + 1e-15);
    DVec shifted = xi;
    shifted[0] += 3.0;
    shifted[1] -= 2.0;
    CHECK(std::abs(mask_eval(B, shifted) - v) < 1e-12);
  }
}

TEST_CASE("mu_n^ matches the atom sum") {
  std::mt19937_64 gen(2);
  for (const auto& sys : {fixtures::example1(), fixtures::jp(), fixtures::example2(6)}) {
    for (std::size_t n = 0; n <= (sys.dim() == 1 ? 6u : 4u); ++n) {
      const auto mu = build_mu_n(sys, n);
      const Transform f = atom_transform(mu);
      for (int i = 0; i < 25; ++i) {
        const DVec xi = random_xi(gen, sys.dim());
        const Complex want = atom_sum(mu, xi);
        CHECK(std::abs(mu_n_hat(sys, n, xi) - want) < 1e-10);
        CHECK(std::abs(f(xi) - want) < 1e-10);
      }
    }
  }
  CHECK(std::abs(mu_n_hat(fixtures::jp(), 0, DVec{0.3}) - 1.0) < 1e-15);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(std::abs(mu_n_hat(fixtures::jp(), n, DVec{1.0})) < 1e-15);
}

TEST_CASE("tails") {
  const auto jp = fixtures::jp();
  CHECK(std::abs(nu_gt_n_hat(jp, 3, 0, DVec{0.7}) - 1.0) < 1e-15);
  for (std::size_t n : {1u, 4u})
    CHECK(std::abs(nu_gt_n_hat(jp, n, 5, DVec{0.37}) - mu_n_hat(jp, 5, DVec{0.37})) < 1e-14);

  const auto ex = fixtures::example1();
  const DVec xi{1.0, 0.0};
  const auto& p1 = fixtures::ex1_p1();
  const auto& p2 = fixtures::ex1_p2();
  const DMat r2t = to_double(p2.R.inverse_transpose());
  const DMat r12t = to_double(inverse(transpose(p1.R.matrix() * p2.R.matrix())));
  const Complex want = mask_eval(p2.B, r2t * xi) * mask_eval(p1.B, r12t * xi);
  CHECK(std::abs(nu_gt_n_hat(ex, 1, 2, xi) - want) < 1e-14);
  // The tail nu_{>1} truncated at 2 is mu_2 of the shifted system.
  CHECK(std::abs(nu_gt_n_hat(ex, 1, 2, xi) - atom_sum(build_mu_n(ex.shifted(1), 2), xi)) < 1e-12);
}

TEST_CASE("multiplicativity mu_{n+t} = mu_n * nu_{>n}") {
  std::mt19937_64 gen(3);
  const auto sys = fixtures::example1();
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t t = 1; t <= 3; ++t)
      for (int i = 0; i < 10; ++i) {
        const DVec xi = random_xi(gen, 2);
        const DVec eta = to_double(transpose(inverse_product(sys, n))) * xi;
        const Complex lhs = mu_n_hat(sys, n, xi) * nu_gt_n_hat(sys, n, t, eta);
        CHECK(std::abs(lhs - mu_n_hat(sys, n + t, xi)) < 1e-12);
      }
}

TEST_CASE("shifted evaluation uses exact lattice phases") {
  std::mt19937_64 gen(4);
  const auto sys = fixtures::example1();
  const MaskProductEvaluator mu(sys, 12);
  for (int i = 0; i < 20; ++i) {
    const DVec x = random_xi(gen, 2, 1.0);
    const IVec lam{static_cast<Int>(gen() % 2000) - 1000, static_cast<Int>(gen() % 2000) - 1000};
    const DVec full{x[0] + static_cast<double>(lam[0]), x[1] + static_cast<double>(lam[1])};
    CHECK(std::abs(mu.at(lam, x) - mu(full)) < 1e-9);
  }
}

TEST_CASE("Q function") {
  const auto jp = fixtures::jp();
  const MaskProductEvaluator mu0(jp, 0);
  CHECK(q_function(mu0, {{0}}, DVec{0.0}) == doctest::Approx(1.0));

  const auto lambda = canonical_spectrum(jp, 2);
  CHECK(lambda == std::vector<IVec>{{0}, {1}, {4}, {5}});
  std::mt19937_64 gen(6);
  const Transform exact = atom_transform(build_mu_n(jp, 2));
  for (int i = 0; i < 20; ++i) CHECK(q_function(exact, lambda, random_xi(gen, 1)) == doctest::Approx(1.0).epsilon(1e-12));

  const MaskProductEvaluator mu(jp, 40);
  const auto r = grid_eval(mu, GridBox::unit(1, 256), Quantity::Q, lambda);
  for (double v : r.values) CHECK(v <= 1.0 + 1e-9);
  const QFunction Q(mu, lambda);
  CHECK(Q(DVec{0.3}) == doctest::Approx(q_function(mu, lambda, DVec{0.3})).epsilon(1e-14));
  // Adding points can only increase Q.
  const auto bigger = canonical_spectrum(jp, 3);
  for (double x = 0.0; x < 1.0; x += 0.05) CHECK(q_function(mu, lambda, DVec{x}) <= q_function(mu, bigger, DVec{x}) + 1e-15);
}

TEST_CASE("grids and rasters") {
  const GridBox one{DVec{0.5}, DVec{0.6}, {1}};
  const auto r = grid_eval([](std::span<const double>) { return 0.25; }, one);
  CHECK(r.values == std::vector<double>{0.25});

  const GridBox box{DVec{0.0, -1.0}, DVec{1.0, 1.0}, {4, 2}};
  CHECK(box.size() == 8);
  CHECK(box.point(0) == DVec{0.0, -1.0});
  CHECK(box.point(1) == DVec{0.25, -1.0});
  CHECK(box.point(5) == DVec{0.25, 0.0});
  CHECK(error_code([] { GridBox{DVec{0.0}, DVec{0.0}, {4}}.validate(); }).has_value());
  CHECK(error_code([] { GridBox{DVec{0.0}, DVec{1.0}, {0}}.validate(); }).has_value());

  const MaskProductEvaluator mu(fixtures::jp(), 30);
  const auto img = grid_eval(mu, GridBox{DVec{0.0}, DVec{4.0}, {1024}}, Quantity::MuHat2);
  CHECK(img.values[256] < 1e-12);  // xi = 1

  const auto sys = fixtures::example1();
  const MaskProductEvaluator m2(sys, 20);
  const auto sym = grid_eval(m2, GridBox{DVec{-1.0, -1.0}, DVec{1.0, 1.0}, {16, 16}}, Quantity::MuHat2);
  // xi_i = -1 + i/8; the mirror of index i is 16 - i.
  for (std::size_t j = 1; j < 16; ++j)
    for (std::size_t i = 1; i < 16; ++i)
      CHECK(sym.values[j * 16 + i] == doctest::Approx(sym.values[(16 - j) * 16 + (16 - i)]).epsilon(1e-12));
}

TEST_CASE("default truncation depth") {
  // ||4^-T|| < 1e-10 first at T = 17.
  CHECK(default_truncation_depth(fixtures::jp()) == 17);
  CHECK(default_truncation_depth(fixtures::example1_word({0, 1, 0})) == 3);
  const std::size_t t = default_truncation_depth(fixtures::example1());
  CHECK(operator_norm(inverse_product(fixtures::example1(), t)) < 1e-10);
  CHECK(operator_norm(inverse_product(fixtures::example1(), t - 1)) >= 1e-10);
}

TEST_CASE("truncation bound") {
  TruncationBound b;
  b.depth = 10;
  b.radius = 1.0;
  b.inverse_norm = std::pow(4.0, -10);
  b.valid = true;
  const DVec xi{2.0};
  CHECK(b.at(xi) == doctest::Approx(2 * M_PI * 2.0 * std::pow(4.0, -10)));
  const MaskProductEvaluator full(fixtures::jp(), 40), cut(fixtures::jp(), 10);
  CHECK(std::abs(full(xi) - cut(xi)) <= b.at(xi));
}
