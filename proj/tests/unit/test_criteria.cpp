#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "infconv/core.hpp"
#include "infconv/criteria.hpp"
#include "infconv/fourier.hpp"

using namespace infconv;
using fixtures::error_code;

namespace {

ConvolutionSystem single(IMat R, std::vector<IVec> B, std::optional<std::vector<IVec>> L = std::nullopt,
                         bool finite = false) {
  AdmissiblePair p("a", ExpandingMatrix(std::move(R)), DigitSet(std::move(B)), std::move(L));
  if (finite) return ConvolutionSystem({p}, {0}, {});
  return ConvolutionSystem::constant(p);
}

QVec q(std::initializer_list<Rational> v) { return QVec(v); }

}  // namespace

TEST_CASE("cube geometry") {
  const auto C = CubeSpec::unit(2);
  CHECK(C.vertices().size() == 4);
  CHECK(C.contains(q({Rational(1), Rational(1, 2)}), false));
  CHECK_FALSE(C.contains(q({Rational(1), Rational(1, 2)}), true));
  CHECK(C.contains(q({Rational(1, 3), Rational(1, 2)}), true));
  CHECK(C.radius() == doctest::Approx(std::sqrt(2.0)));
  const CubeSpec shifted{q({Rational(-1, 2)})};
  CHECK(shifted.radius() == doctest::Approx(0.5));
}

TEST_CASE("cube conditions for Example 1") {
  const auto rep = check_cube_conditions(fixtures::example1(), CubeSpec::unit(2));
  CHECK(rep.condition_i.certified);
  CHECK(rep.condition_ii_holds);
  CHECK(rep.condition_iii_holds);
  CHECK(rep.recurrence.recurs);
  CHECK(rep.holds());
  REQUIRE(rep.distinguished);
  CHECK(rep.auto_found);

  const auto given = check_cube_conditions(fixtures::example1(), CubeSpec::unit(2), Distinguished{1, {0, 2}});
  CHECK(given.holds());
  CHECK_FALSE(given.auto_found);
}

TEST_CASE("cube invariance on small fixtures") {
  const auto ok = check_cube_conditions(single(IMat::from_rows({{2, 0}, {0, 2}}), {{0, 0}, {1, 1}}), CubeSpec::unit(2));
  CHECK(ok.condition_ii_holds);
  const auto bad = check_cube_conditions(single(IMat::from_rows({{2}}), {{0}, {3}}), CubeSpec::unit(1));
  CHECK_FALSE(bad.condition_ii_holds);
  REQUIRE(bad.condition_ii.size() == 1);
  CHECK(bad.condition_ii[0].failing_digit == IVec{3});
  const QVec v = *bad.condition_ii[0].failing_vertex;
  CHECK((v == q({Rational(3, 2)}) || v == q({Rational(2)})));
  std::optional<QVec> fv;
  CHECK_FALSE(image_in_cube(ExpandingMatrix(IMat::from_rows({{2}})), {3}, CubeSpec::unit(1), false, &fv));
  CHECK(image_in_cube(ExpandingMatrix(IMat::from_rows({{2}})), {1}, CubeSpec::unit(1), false));
  CHECK_FALSE(image_in_cube(ExpandingMatrix(IMat::from_rows({{2}})), {1}, CubeSpec::unit(1), true));
  CHECK(image_in_cube(ExpandingMatrix(IMat::from_rows({{4}})), {1}, CubeSpec::unit(1), true));
}

TEST_CASE("contraction") {
  const auto c = check_contraction(fixtures::jp());
  CHECK(c.certified);
  CHECK(c.power == 1);
  CHECK(check_contraction(fixtures::example1()).certified);
  CHECK_FALSE(check_contraction(fixtures::example2(4)).certified);
  // A shear with eigenvalue modulus 2 but a large first inverse power.
  const auto shear = single(IMat::from_rows({{2, 40}, {0, 2}}), {{0, 0}, {1, 0}});
  const auto s = check_contraction(shear);
  CHECK(s.certified);
  CHECK(s.power > 1);
}

TEST_CASE("recurrence") {
  CHECK(recurrence(fixtures::example1(), 0).recurs);
  const auto ex2 = fixtures::example2(6);
  const auto odd = recurrence(ex2, 0);
  CHECK(odd.recurs);
  CHECK(odd.within_prefix);
  CHECK_FALSE(recurrence(ex2, 1).recurs);
  const ConvolutionSystem pre({fixtures::ex1_p1(), fixtures::ex1_p2()}, {1}, {0});
  CHECK_FALSE(recurrence(pre, 1).recurs);
  CHECK(recurrence(pre, 0).recurs);
}

TEST_CASE("isolating digits") {
  CHECK(find_isolating_digit(IMat::from_rows({{3, 0}, {0, 3}}), {{0, 0}, {0, 1}, {1, 0}}) == IVec{0, 0});
  CHECK(find_isolating_digit(IMat::from_rows({{2}}), {{0}}) == IVec{0});
  CHECK(find_isolating_digit(IMat::from_rows({{2}}), {{0}, {1}}) == IVec{1});
  CHECK(error_code([] { find_isolating_digit(IMat::from_rows({{4, 0}, {4, -4}}), {{2, 0}}); }) == ErrorCode::NotInDd);
}

TEST_CASE("isolating digits agree with a brute-force oracle and the cover witness") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + gen() % 2;
    IMat R(d, d);
    for (std::size_t i = 0; i < d; ++i) R(i, i) = 2 + static_cast<Int>(gen() % 4);
    std::set<IVec> Bs;
    const std::size_t n = 1 + gen() % 4;
    for (std::size_t k = 0; k < 20 && Bs.size() < n; ++k) {
      IVec b(d);
      for (std::size_t i = 0; i < d; ++i) b[i] = static_cast<Int>(gen() % static_cast<std::uint64_t>(R(i, i)));
      Bs.insert(b);
    }
    const std::vector<IVec> B(Bs.begin(), Bs.end());
    // b isolates iff no n != 0 in {-1,0,1}^d and b' in B put b + R n - b' in {0,1}^d.
    std::optional<IVec> want;
    for (const auto& b : B) {
      bool good = true;
      for (const auto& nv : lattice_box(d, 1)) {
        if (std::all_of(nv.begin(), nv.end(), [](Int v) { return v == 0; })) continue;
        for (const auto& bp : B) {
          bool in = true;
          for (std::size_t i = 0; i < d; ++i) {
            const Int c = b[i] + R(i, i) * nv[i] - bp[i];
            in = in && (c == 0 || c == 1);
          }
          good = good && !in;
        }
      }
      if (good) {
        want = b;
        break;
      }
    }
    const auto got = find_isolating_digit(R, B);
    CHECK(got == want);
    if (got) {
      const ExpandingMatrix ER(R);
      const auto w = check_isolation_witness(SupportCover::digit_cover(ER, DigitSet(B)), Region::point(ER.inverse() * *got));
      CHECK(w.holds);
    }
  }
}

TEST_CASE("isolation witnesses for discrete measures") {
  const auto half = DiscreteMeasure::dirac(q({Rational(1, 2)}));
  CHECK(check_isolation_witness(half, Region::point(q({Rational(1, 2)}))).holds);
  const auto two = fixtures::two_point();
  const auto r = check_isolation_witness(two, Region::point(q({0})), 2);
  CHECK_FALSE(r.holds);
  CHECK(r.offending_k == IVec{1});
  const auto box = check_isolation_witness(two, Region{q({Rational(-1, 4)}), q({Rational(1, 4)})});
  CHECK_FALSE(box.holds);
  const auto third = DiscreteMeasure(1, {Atom{q({0}), Rational(1, 2)}, Atom{q({Rational(1, 3)}), Rational(1, 2)}});
  const auto t = check_isolation_witness(third, Region::point(q({0})), 3);
  CHECK(t.holds);
  CHECK(t.mass_lower == Rational(1, 2));
}

TEST_CASE("isolation witnesses for truncated systems") {
  const auto cover = SupportCover::from_system(fixtures::jp(), 6, CubeSpec::unit(1));
  const Region E{q({Rational(1, 6) - Rational(1, 16)}), q({Rational(1, 6) + Rational(1, 16)})};
  const auto w = check_isolation_witness(cover, E);
  CHECK(w.holds);
  CHECK(w.mass_certified);
  CHECK(w.mass_lower > 0);
  const Region bounds = cover.bounds();
  CHECK(bounds.lo == q({0}));
  CHECK(bounds.hi <= q({Rational(2, 3) + Rational(1, 4096)}));

  CHECK(error_code([] { SupportCover::from_system(single(IMat::from_rows({{2}}), {{0}, {3}}), 2, CubeSpec::unit(1)); }) ==
        ErrorCode::NoSupportBound);
}

TEST_CASE("zero-set scans") {
  const auto dirac = scan_zero_set(atom_transform(DiscreteMeasure::dirac(q({0}))), 1, 64, 8, 1e-6);
  CHECK(dirac.points.empty());
  const auto two = scan_zero_set(atom_transform(fixtures::two_point()), 1, 64, 8, 1e-12);
  REQUIRE(two.points.size() == 1);
  CHECK(two.points[0] == DVec{0.5});
  CHECK(two.values[0] < 1e-12);
  const auto third = DiscreteMeasure(1, {Atom{q({0}), Rational(1, 2)}, Atom{q({Rational(1, 3)}), Rational(1, 2)}});
  CHECK(scan_zero_set(atom_transform(third), 1, 96, 8, 1e-6).points.empty());
  const MaskProductEvaluator jp(fixtures::jp(), 40);
  const auto s = scan_zero_set([&](std::span<const double> x) { return jp(x); }, 1, 256, 8, 1e-6);
  CHECK(s.points.empty());
  CHECK(s.lattice == 8);
  CHECK(s.resolution == 256);
}

TEST_CASE("equi-positivity") {
  const auto dirac = single(IMat::from_rows({{2}}), {{0}}, std::vector<IVec>{{0}});
  const auto c0 = estimate_equipositivity(dirac, 0, EquiPosOptions{16, 2, 5, 1e-4, std::nullopt});
  CHECK(c0.ok);
  CHECK(c0.eps == doctest::Approx(1.0));
  for (const auto& row : c0.rows) CHECK(row.k == IVec{0});

  const auto two = single(IMat::from_rows({{2}}), {{0}, {2}}, std::nullopt, true);
  const auto bad = estimate_equipositivity(two, 0, EquiPosOptions{16, 3, 30, 1e-4, std::nullopt});
  CHECK_FALSE(bad.ok);
  CHECK(bad.worst_point == DVec{0.5});

  EquiPosOptions opt;
  opt.resolution = 256;
  opt.box = 3;
  opt.tail_depth = 30;
  const auto jp = estimate_equipositivity(fixtures::jp(), 0, opt);
  CHECK(jp.ok);
  CHECK(jp.eps > 0.05);
  CHECK(jp.empirical);
  REQUIRE(jp.rows.size() == 256);
  CHECK(jp.rows[0].k == IVec{0});
  CHECK(jp.gamma == doctest::Approx(0.5 / 256));
  const MaskProductEvaluator nu(fixtures::jp(), 30);
  for (const auto& row : jp.rows) {
    CHECK(std::abs(nu.at(row.k, row.x)) >= jp.eps - 1e-15);
    CHECK(std::abs(nu.at(row.k, row.x)) == doctest::Approx(row.value).epsilon(1e-12));
  }
}
