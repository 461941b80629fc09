#include "infconv/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace infconv {

namespace {

using json = nlohmann::json;

class Parser {
 public:
  explicit Parser(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw Error(ErrorCode::Schema, origin_ + ": " + (path.empty() ? "/" : path) + ": " + msg);
  }

  void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!ok.count(it.key())) fail(path + "/" + it.key(), "unknown key");
  }

  const json& need(const json& j, const std::string& path, const char* key) const {
    if (!j.contains(key)) fail(path + "/" + key, "missing required key");
    return j.at(key);
  }

  Int integer(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<Int>();
  }

  std::size_t count(const json& j, const std::string& path) const {
    const Int v = integer(j, path);
    if (v < 0) fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  double real(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }

  Rational rational(const json& j, const std::string& path) const {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(path, "expected a rational string \"p/q\" or an integer");
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  IVec ivec(const json& j, const std::string& path, std::size_t d) const {
    if (!j.is_array()) fail(path, "expected an integer vector");
    if (j.size() != d) fail(path, "expected " + std::to_string(d) + " entries, got " + std::to_string(j.size()));
    IVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], path + "/" + std::to_string(i)));
    return v;
  }

  std::vector<IVec> ivecs(const json& j, const std::string& path, std::size_t d) const {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of vectors");
    std::vector<IVec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(ivec(j[i], path + "/" + std::to_string(i), d));
    return out;
  }

  std::vector<std::size_t> counts(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected a list of integers");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(count(j[i], path + "/" + std::to_string(i)));
    return out;
  }

  AdmissiblePair pair(const json& j, const std::string& path, std::size_t d) const {
    only_keys(j, path, {"name", "R", "B", "L", "weights"});
    const json& name = need(j, path, "name");
    if (!name.is_string() || name.get<std::string>().empty()) fail(path + "/name", "expected a nonempty string");
    const auto rows = ivecs(need(j, path, "R"), path + "/R", d);
    if (rows.size() != d) fail(path + "/R", "expected " + std::to_string(d) + " rows");
    const auto B = ivecs(need(j, path, "B"), path + "/B", d);
    std::vector<Rational> weights;
    if (j.contains("weights")) {
      const json& w = j.at("weights");
      if (!w.is_array()) fail(path + "/weights", "expected a list of rationals");
      if (w.size() != B.size()) fail(path + "/weights", "weights and B differ in count");
      for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(rational(w[i], path + "/weights/" + std::to_string(i)));
    }
    std::optional<std::vector<IVec>> L;
    if (j.contains("L")) L = ivecs(j.at("L"), path + "/L", d);
    try {
      return AdmissiblePair(name.get<std::string>(), ExpandingMatrix(IMat::from_rows(rows)), DigitSet(B, weights),
                            std::move(L));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Schema) throw;
      throw Error(e.code(), origin_ + ": " + path + ": " + e.what());
    }
  }

  std::vector<std::size_t> letters(const json& j, const std::string& path,
                                   const std::vector<AdmissiblePair>& menu) const {
    if (!j.is_array()) fail(path, "expected a list of pair names");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = path + "/" + std::to_string(i);
      if (!j[i].is_string()) fail(p, "expected a pair name");
      const auto name = j[i].get<std::string>();
      std::size_t idx = menu.size();
      for (std::size_t m = 0; m < menu.size(); ++m)
        if (menu[m].name == name) idx = m;
      if (idx == menu.size()) fail(p, "no pair named '" + name + "'");
      out.push_back(idx);
    }
    return out;
  }

  Params params(const json& j, const std::string& path, std::size_t d) const {
    only_keys(j, path,
              {"truncation", "grid", "tol", "lattice", "gamma", "eps", "box", "tail_depth", "atom_cap", "seed", "cube",
               "distinguished", "levels", "first_level", "level_count", "eps_min", "delta_report", "tails", "threads",
               "corrected"});
    Params p;
    auto at = [&](const char* k) { return path + "/" + k; };
    if (j.contains("truncation")) p.truncation = count(j["truncation"], at("truncation"));
    if (j.contains("grid")) p.grid = count(j["grid"], at("grid"));
    if (j.contains("tol")) p.tol = real(j["tol"], at("tol"));
    if (j.contains("lattice")) p.lattice = static_cast<int>(count(j["lattice"], at("lattice")));
    if (j.contains("gamma")) p.gamma = real(j["gamma"], at("gamma"));
    if (j.contains("eps")) p.eps = real(j["eps"], at("eps"));
    if (j.contains("box")) p.box = static_cast<int>(count(j["box"], at("box")));
    if (j.contains("tail_depth")) p.tail_depth = count(j["tail_depth"], at("tail_depth"));
    if (j.contains("atom_cap")) p.atom_cap = count(j["atom_cap"], at("atom_cap"));
    if (j.contains("seed")) p.seed = count(j["seed"], at("seed"));
    if (j.contains("cube")) {
      const json& c = j["cube"];
      if (!c.is_array() || c.size() != d) fail(at("cube"), "expected " + std::to_string(d) + " rational entries");
      QVec t0;
      for (std::size_t i = 0; i < c.size(); ++i) t0.push_back(rational(c[i], at("cube") + "/" + std::to_string(i)));
      p.cube = t0;
    }
    if (j.contains("distinguished")) {
      const json& dj = j["distinguished"];
      const std::string dp = at("distinguished");
      only_keys(dj, dp, {"pair", "digit"});
      const json& name = need(dj, dp, "pair");
      if (!name.is_string()) fail(dp + "/pair", "expected a pair name");
      p.distinguished = DistinguishedSpec{name.get<std::string>(), ivec(need(dj, dp, "digit"), dp + "/digit", d)};
    }
    if (j.contains("levels")) p.levels = counts(j["levels"], at("levels"));
    if (j.contains("first_level")) p.first_level = count(j["first_level"], at("first_level"));
    if (j.contains("level_count")) p.level_count = count(j["level_count"], at("level_count"));
    if (j.contains("eps_min")) p.eps_min = real(j["eps_min"], at("eps_min"));
    if (j.contains("delta_report")) p.delta_report = real(j["delta_report"], at("delta_report"));
    if (j.contains("tails")) p.tails = counts(j["tails"], at("tails"));
    if (j.contains("threads")) p.threads = static_cast<unsigned>(count(j["threads"], at("threads")));
    if (j.contains("corrected")) {
      if (!j["corrected"].is_boolean()) fail(at("corrected"), "expected true or false");
      p.corrected = j["corrected"].get<bool>();
    }
    return p;
  }

  Config config(const json& root) const {
    only_keys(root, "", {"dimension", "pairs", "word", "params"});
    const std::size_t d = count(need(root, "", "dimension"), "/dimension");
    if (d == 0) fail("/dimension", "dimension must be positive");
    const json& pj = need(root, "", "pairs");
    if (!pj.is_array() || pj.empty()) fail("/pairs", "expected a nonempty list of pairs");
    std::vector<AdmissiblePair> menu;
    std::set<std::string> names;
    for (std::size_t i = 0; i < pj.size(); ++i) {
      const std::string path = "/pairs/" + std::to_string(i);
      menu.push_back(pair(pj[i], path, d));
      if (!names.insert(menu.back().name).second) fail(path + "/name", "duplicate pair name");
    }
    const json& wj = need(root, "", "word");
    only_keys(wj, "/word", {"prefix", "cycle"});
    std::vector<std::size_t> prefix, cycle;
    if (wj.contains("prefix")) prefix = letters(wj["prefix"], "/word/prefix", menu);
    if (wj.contains("cycle")) cycle = letters(wj["cycle"], "/word/cycle", menu);
    if (prefix.empty() && cycle.empty()) fail("/word", "word has no letters");
    Params p;
    if (root.contains("params")) p = params(root["params"], "/params", d);
    if (p.distinguished) {
      if (!names.count(p.distinguished->pair)) fail("/params/distinguished/pair", "no pair named '" + p.distinguished->pair + "'");
    }
    return Config{d, ConvolutionSystem(std::move(menu), std::move(prefix), std::move(cycle)), std::move(p)};
  }

 private:
  std::string origin_;
};

}  // namespace

Config parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, origin + ": " + e.what());
  }
  return Parser(origin).config(root);
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

CorrectedOptions corrected_options(const Params& p) {
  CorrectedOptions o;
  o.depths = p.levels;
  o.first_depth = p.first_level;
  o.level_count = p.level_count;
  o.gamma = p.gamma;
  o.eps = p.eps;
  o.box = p.box;
  o.tail_depth = p.tail_depth;
  return o;
}

EquiPosOptions equipos_options(const Params& p) {
  EquiPosOptions o;
  o.box = p.box;
  o.tail_depth = p.tail_depth;
  o.eps_min = p.eps_min;
  if (p.cube) o.cube = CubeSpec{*p.cube};
  return o;
}

CertifyOptions certify_options(const Config& cfg) {
  const Params& p = cfg.params;
  CertifyOptions o;
  o.truncation = p.truncation;
  o.grid = p.grid;
  o.delta = p.delta_report;
  if (p.cube) o.cube = CubeSpec{*p.cube};
  if (p.distinguished) o.distinguished = Distinguished{cfg.system.find(p.distinguished->pair), p.distinguished->digit};
  o.corrected = p.corrected;
  o.spectrum = corrected_options(p);
  o.levels = p.levels;
  o.tails = p.tails;
  o.equipos = equipos_options(p);
  return o;
}

MatrixOptions matrix_options(const Config& cfg) {
  const Params& p = cfg.params;
  MatrixOptions o;
  if (p.cube) o.cube = CubeSpec{*p.cube};
  o.box = p.box;
  o.tail_depth = p.tail_depth;
  o.lattice = p.lattice;
  o.tol = p.tol;
  return o;
}

}  // namespace infconv
