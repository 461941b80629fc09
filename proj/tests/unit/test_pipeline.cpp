#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "infconv/config.hpp"
#include "infconv/pipeline.hpp"

using namespace infconv;
using fixtures::error_code;

namespace {

Config load(const char* name) { return parse_config(std::string(INFCONV_CONFIG_DIR) + "/" + name); }

CertificationReport run(const char* name, Strategy s) {
  const auto cfg = load(name);
  return certify_spectrality(cfg.system, s, certify_options(cfg));
}

Grade row_min(const CertificationReport& r) {
  Grade g = Grade::Pass;
  for (const auto& row : r.rows) g = std::min(g, row.grade);
  return g;
}

const HypothesisRow& find_row(const std::vector<HypothesisRow>& rows, const std::string& prefix) {
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.name.rfind(prefix, 0) == 0; });
  REQUIRE(it != rows.end());
  return *it;
}

}  // namespace

TEST_CASE("grades and strategies") {
  CHECK(exit_code(Grade::Pass) == 0);
  CHECK(exit_code(Grade::Fail) == 1);
  CHECK(exit_code(Grade::Evidence) == 2);
  CHECK(to_string(Grade::Evidence) == "EVIDENCE");
  CHECK(parse_strategy("cube") == Strategy::Cube);
  CHECK(parse_strategy("dd") == Strategy::Dd);
  CHECK(parse_strategy("equipos") == Strategy::EquiPositivity);
  CHECK(error_code([] { parse_strategy("nope"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("attach_spectra fills in missing spectra") {
  const auto cfg = load("cantor3.json");
  std::vector<PairLine> lines;
  attach_spectra(cfg.system, lines);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].admissible);

  const ConvolutionSystem jp = ConvolutionSystem::constant(
      AdmissiblePair("j", ExpandingMatrix(IMat::from_rows({{4}})), DigitSet(std::vector<IVec>{{0}, {2}})));
  std::vector<PairLine> found;
  const auto full = attach_spectra(jp, found);
  REQUIRE(found.size() == 1);
  CHECK(found[0].spectrum_found);
  CHECK(found[0].L == std::vector<IVec>{{0}, {1}});
  CHECK(full.at(1).L);
}

TEST_CASE("certify Example 1 with the cube strategy") {
  const auto r = run("example1.json", Strategy::Cube);
  CHECK(r.verdict == Grade::Pass);
  CHECK(r.exit_code() == 0);
  CHECK(r.verdict == std::min(row_min(r), Grade::Pass));
  REQUIRE(r.level);
  CHECK(r.level->gram.identity());
  CHECK(r.level->q_min >= 0.98);
  CHECK(r.level->upper_ok);
  CHECK(r.text().find("verdict: PASS") != std::string::npos);
  CHECK(r.csv().rfind("section,name,value\n", 0) == 0);
}

TEST_CASE("certify Example 2 and the JP system") {
  CHECK(run("example2.json", Strategy::Dd).verdict == Grade::Pass);
  CHECK(run("example2.json", Strategy::Cube).verdict == Grade::Fail);
  CHECK(run("jp.json", Strategy::Dd).verdict == Grade::Pass);
  const auto e = run("jp.json", Strategy::EquiPositivity);
  CHECK(e.verdict == Grade::Evidence);
  CHECK(e.exit_code() == 2);
  CHECK(e.verdict == row_min(e));
}

TEST_CASE("non-spectral and non-admissible inputs fail") {
  const auto c = run("cantor3.json", Strategy::Dd);
  CHECK(c.verdict == Grade::Fail);
  const auto t = run("twopoint.json", Strategy::Cube);
  CHECK(t.verdict == Grade::Fail);
  REQUIRE_FALSE(t.rows.empty());
  CHECK(t.rows.front().grade == Grade::Fail);
}

TEST_CASE("reports are reproducible") {
  const auto a = run("example2.json", Strategy::Dd);
  const auto b = run("example2.json", Strategy::Dd);
  CHECK(a.text() == b.text());
  CHECK(a.csv() == b.csv());
}

TEST_CASE("hypothesis matrix") {
  const auto ex2 = load("example2.json");
  const auto rows = hypothesis_matrix(ex2.system, matrix_options(ex2));
  CHECK(rows.size() == 5);
  CHECK(find_row(rows, "cube conditions").grade == Grade::Fail);
  CHECK(find_row(rows, "digit-box pairs with a recurring pair").grade == Grade::Pass);
  CHECK(find_row(rows, "digit-box pairs from a finite menu").grade == Grade::Fail);

  const auto jp = load("jp.json");
  const auto jrows = hypothesis_matrix(jp.system, matrix_options(jp));
  CHECK(find_row(jrows, "digit-box pairs from a finite menu").grade == Grade::Pass);
  CHECK(find_row(jrows, "equi-positive tail family").grade == Grade::Evidence);

  const auto ex1 = load("example1.json");
  CHECK(find_row(hypothesis_matrix(ex1.system, matrix_options(ex1)), "cube conditions").grade == Grade::Pass);

  const auto two = load("twopoint.json");
  for (const auto& r : hypothesis_matrix(two.system, matrix_options(two))) {
    CHECK(r.grade == Grade::Fail);
    CHECK(r.detail.find("not admissible") != std::string::npos);
  }
}
