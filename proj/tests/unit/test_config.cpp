#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "infconv/config.hpp"

using namespace infconv;
using fixtures::error_code;

namespace {

std::string doc(const std::string& pairs, const std::string& word = R"({"cycle": ["a"]})", const std::string& extra = "") {
  return R"({"dimension": 1, "pairs": )" + pairs + R"(, "word": )" + word + extra + "}";
}

const std::string kPair = R"([{"name": "a", "R": [[4]], "B": [[0], [2]], "L": [[0], [1]]}])";

std::string message(const std::string& text) {
  try {
    parse_config_text(text, "t.json");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped configs parse") {
  const std::string dir = INFCONV_CONFIG_DIR;
  const auto ex1 = parse_config(dir + "/example1.json");
  CHECK(ex1.dimension == 2);
  CHECK(ex1.system.menu().size() == 2);
  CHECK(ex1.system.at(1).name == "p1");
  CHECK(ex1.system.at(2).name == "p2");
  CHECK(ex1.system.at(3).name == "p1");
  CHECK_FALSE(ex1.system.length());
  REQUIRE(ex1.params.cube);
  CHECK(*ex1.params.cube == QVec{0, 0});
  CHECK(ex1.params.grid == 64);

  const auto ex2 = parse_config(dir + "/example2.json");
  REQUIRE(ex2.system.length());
  CHECK(*ex2.system.length() == 6);
  CHECK(ex2.system.at(4).name == "even4");

  for (const char* f : {"jp.json", "cantor3.json", "twopoint.json"}) CHECK_NOTHROW(parse_config(dir + "/" + f));
  CHECK(error_code([&] { parse_config(dir + "/missing.json"); }) == ErrorCode::Io);
}

TEST_CASE("defaults and params") {
  const auto c = parse_config_text(doc(kPair));
  CHECK(c.params.grid == 64);
  CHECK(c.params.seed == 1);
  CHECK(c.params.corrected);
  CHECK(c.params.tails == std::vector<std::size_t>{0});
  const auto p = parse_config_text(doc(kPair, R"({"cycle": ["a"]})",
                                       R"(, "params": {"grid": 16, "tol": 1e-3, "cube": ["-1/2"], "levels": [1, 3],
                                            "distinguished": {"pair": "a", "digit": [2]}, "corrected": false})"));
  CHECK(p.params.grid == 16);
  CHECK(p.params.tol == 1e-3);
  CHECK(*p.params.cube == QVec{Rational(-1, 2)});
  CHECK(p.params.levels == std::vector<std::size_t>{1, 3});
  CHECK(p.params.distinguished->digit == IVec{2});
  CHECK_FALSE(p.params.corrected);
  const auto opt = certify_options(p);
  CHECK(opt.grid == 16);
  CHECK_FALSE(opt.corrected);
  REQUIRE(opt.distinguished);
  CHECK(opt.distinguished->pair == 0);
}

TEST_CASE("finite prefix and mixed words") {
  const auto c = parse_config_text(doc(kPair, R"({"prefix": ["a", "a"]})"));
  CHECK(c.system.length() == std::optional<std::size_t>(2));
  CHECK(error_code([&] { c.system.at(3); }) == ErrorCode::DepthOutOfRange);
}

TEST_CASE("schema errors") {
  CHECK(error_code([] { parse_config_text(doc(R"([{"name": "a", "R": [[4]], "B": [[0, 1]]}])")); }) == ErrorCode::Schema);
  CHECK(message(doc(R"([{"name": "a", "R": [[4]], "B": [[0, 1]]}])")).find("/pairs/0/B") != std::string::npos);
  CHECK(error_code([] { parse_config_text(doc(kPair, R"({"cycle": ["a"]})", R"(, "extra": 1)")); }) == ErrorCode::Schema);
  CHECK(message(doc(kPair, R"({"cycle": ["a"]})", R"(, "params": {"grdi": 3})")).find("unknown key") != std::string::npos);
  CHECK(error_code([] { parse_config_text(doc(kPair, R"({"cycle": ["b"]})")); }) == ErrorCode::Schema);
  CHECK(error_code([] { parse_config_text(doc(kPair, R"({})")); }) == ErrorCode::Schema);
  CHECK(error_code([] { parse_config_text(R"({"pairs": [], "word": {}})"); }) == ErrorCode::Schema);
}

TEST_CASE("pair validation surfaces through the parser") {
  CHECK(error_code([] { parse_config_text(doc(R"([{"name": "a", "R": [[1]], "B": [[0]]}])")); }) == ErrorCode::Borderline);
  CHECK(error_code([] {
          parse_config_text(R"({"dimension": 2, "pairs": [{"name": "a", "R": [[2, 1], [1, 1]], "B": [[0, 0]]}],
                                "word": {"cycle": ["a"]}})");
        }) == ErrorCode::NotExpanding);
  CHECK(error_code([] { parse_config_text(doc(R"([{"name": "a", "R": [[4]], "B": [[0], [2]], "L": [[0]]}])")); }) ==
        ErrorCode::SizeMismatch);
  const auto m = message(doc(R"([{"name": "a", "R": [[4]], "B": [[0], [2]], "L": [[0]]}])"));
  CHECK(m.find("t.json") != std::string::npos);
  CHECK(m.find("/pairs/0") != std::string::npos);
}

TEST_CASE("JSON syntax errors report line and column") {
  const auto m = message("{\n  \"dimension\": 1,\n  \"pairs\": [\n}");
  CHECK(m.find("line 4") != std::string::npos);
  CHECK(m.find("column") != std::string::npos);
  CHECK(error_code([] { parse_config_text("{"); }) == ErrorCode::Schema);
}
