#include "infconv/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "infconv/fourier.hpp"
#include "infconv/io.hpp"

namespace infconv {

namespace {

Grade min_grade(Grade a, Grade b) { return static_cast<int>(a) < static_cast<int>(b) ? a : b; }

std::string vec_list(const std::vector<IVec>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " (" : "(") + to_string(v[i]) + ")";
  return s;
}

std::string qvec(const QVec& v) { return "(" + to_string(v) + ")"; }

std::string dvec(const DVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s + ")";
}

bool all_admissible(const std::vector<PairLine>& lines) {
  return std::all_of(lines.begin(), lines.end(), [](const PairLine& p) { return p.admissible; });
}

std::string first_inadmissible(const std::vector<PairLine>& lines) {
  for (const auto& p : lines)
    if (!p.admissible) return "pair '" + p.name + "': " + p.detail;
  return {};
}

HypothesisRow admissibility_row(const std::vector<PairLine>& lines) {
  if (all_admissible(lines)) return {"admissible pairs", Grade::Pass, "every pair in the word, exact cyclotomic test"};
  return {"admissible pairs", Grade::Fail, "not admissible: " + first_inadmissible(lines)};
}

HypothesisRow contraction_row(const ContractionCheck& c) {
  return {"contraction of R_1^{-1}...R_n^{-1}", c.certified ? Grade::Pass : Grade::Fail, c.note};
}

std::vector<HypothesisRow> cube_rows(const ConvolutionSystem& system, const CubeReport& rep) {
  std::vector<HypothesisRow> rows;
  rows.push_back(contraction_row(rep.condition_i));
  std::string inv = "C = " + qvec(rep.cube.t0) + " + [0,1]^" + std::to_string(system.dim());
  for (const auto& pc : rep.condition_ii) {
    if (pc.holds) continue;
    inv += "; fails for pair '" + pc.name + "', digit (" + to_string(*pc.failing_digit) + "), vertex image " +
           qvec(*pc.failing_vertex);
    break;
  }
  rows.push_back({"cube invariance R_n^{-1}(C + b) in C", rep.condition_ii_holds ? Grade::Pass : Grade::Fail, inv});
  std::string inner;
  if (rep.distinguished) {
    inner = "pair '" + system.menu()[rep.distinguished->pair].name + "', digit (" + to_string(rep.distinguished->digit) + ")";
    if (rep.auto_found) inner += ", found by search";
  } else {
    inner = rep.note;
  }
  rows.push_back({"interior digit R^{-1}(C + b0) in int(C)", rep.condition_iii_holds ? Grade::Pass : Grade::Fail, inner});
  rows.push_back({"distinguished pair recurs", rep.distinguished && rep.recurrence.recurs ? Grade::Pass : Grade::Fail,
                  rep.distinguished ? rep.recurrence.note : "no distinguished pair"});
  return rows;
}

struct DdScan {
  bool all_dd = true;
  std::string not_dd;
  std::optional<std::size_t> recurring;
  RecurrenceInfo recurrence;
};

DdScan scan_dd(const ConvolutionSystem& system) {
  DdScan s;
  const auto d = static_cast<Int>(system.dim());
  for (auto idx : system.used_indices()) {
    const auto& pair = system.menu()[idx];
    if (!check_Dd_membership(pair.R.matrix(), pair.B.digits())) {
      if (s.all_dd) s.not_dd = pair.name;
      s.all_dd = false;
      continue;
    }
    Int smallest = pair.R.matrix()(0, 0);
    for (std::size_t i = 0; i < system.dim(); ++i) smallest = std::min(smallest, pair.R.matrix()(i, i));
    if (s.recurring || smallest < d + 1) continue;
    const auto rec = recurrence(system, idx);
    if (rec.recurs) {
      s.recurring = idx;
      s.recurrence = rec;
    }
  }
  return s;
}

std::vector<HypothesisRow> dd_rows(const ConvolutionSystem& system) {
  std::vector<HypothesisRow> rows;
  const auto s = scan_dd(system);
  rows.push_back({"digit-box pairs (diagonal R, digits in the box)", s.all_dd ? Grade::Pass : Grade::Fail,
                  s.all_dd ? "every pair in the word" : "pair '" + s.not_dd + "' is not in the digit box class"});
  if (!s.recurring) {
    rows.push_back({"recurring pair with diagonal entries >= d+1", Grade::Fail, "no digit-box pair qualifies"});
    rows.push_back({"isolating digit of the recurring pair", Grade::Fail, "no recurring pair"});
    return rows;
  }
  const auto& pair = system.menu()[*s.recurring];
  rows.push_back({"recurring pair with diagonal entries >= d+1", Grade::Pass, "pair '" + pair.name + "', " + s.recurrence.note});
  const auto b = find_isolating_digit(pair.R.matrix(), pair.B.digits());
  if (!b) {
    rows.push_back({"isolating digit of the recurring pair", Grade::Fail,
                    "no digit isolated by the cover R^{-1}B + R^{-1}[0,1]^d (the cover test is conservative)"});
    return rows;
  }
  const auto cover = SupportCover::digit_cover(pair.R, pair.B);
  const auto w = check_isolation_witness(cover, Region::point(pair.R.inverse() * *b));
  rows.push_back({"isolating digit of the recurring pair", w.holds ? Grade::Pass : Grade::Fail,
                  "digit (" + to_string(*b) + "), " +
                      (w.holds ? std::string("no nonzero lattice translate of R^{-1}b meets the cover")
                               : "translate by (" + to_string(*w.offending_k) + ") meets the cover")});
  return rows;
}

HypothesisRow equipos_row(const ConvolutionSystem& system, const std::vector<std::size_t>& tails, const EquiPosOptions& eo) {
  double eps = 1.0;
  std::string worst;
  bool ok = true;
  for (auto n : tails) {
    const auto cert = estimate_equipositivity(system, n, eo);
    if (cert.eps < eps) {
      eps = cert.eps;
      worst = "tail " + std::to_string(n) + " at x = " + dvec(cert.worst_point);
    }
    ok = ok && cert.ok;
  }
  std::string tl;
  for (std::size_t i = 0; i < tails.size(); ++i) tl += (i ? "," : "") + std::to_string(tails[i]);
  std::string detail = "tails {" + tl + "}, grid " + std::to_string(eo.resolution) + ", box " + std::to_string(eo.box) +
                       ", depth " + std::to_string(eo.tail_depth) + ", min eps " + format_double(eps) + " (" + worst + ")";
  if (!ok) detail += ", below eps_min " + format_double(eo.eps_min);
  return {"equi-positive tail family", ok ? Grade::Evidence : Grade::Fail, detail};
}

}  // namespace

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::Pass: return "PASS";
    case Grade::Evidence: return "EVIDENCE";
    case Grade::Fail: return "FAIL";
  }
  return "FAIL";
}

int exit_code(Grade g) {
  switch (g) {
    case Grade::Pass: return 0;
    case Grade::Evidence: return 2;
    case Grade::Fail: return 1;
  }
  return 1;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Cube: return "cube";
    case Strategy::Dd: return "dd";
    case Strategy::EquiPositivity: return "equipos";
  }
  return "cube";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "cube") return Strategy::Cube;
  if (text == "dd" || text == "Dd") return Strategy::Dd;
  if (text == "equipos" || text == "equipositivity") return Strategy::EquiPositivity;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(text) + "'");
}

ConvolutionSystem attach_spectra(const ConvolutionSystem& system, std::vector<PairLine>& lines) {
  ConvolutionSystem out = system;
  lines.clear();
  for (auto idx : system.used_indices()) {
    const auto& pair = system.menu()[idx];
    PairLine line;
    line.name = pair.name;
    if (pair.L) {
      const auto rep = check_admissible(pair);
      line.admissible = rep.admissible;
      line.L = *pair.L;
      line.detail = rep.admissible ? "given spectrum verified" : rep.detail;
    } else {
      const auto found = find_spectra(pair.R, pair.B.digits(), 1);
      if (found.empty()) {
        line.detail = "no spectrum among the residues of R^T";
      } else {
        line.admissible = check_admissible(pair.R, pair.B.digits(), found.front()).admissible;
        line.spectrum_found = true;
        line.L = found.front();
        line.detail = "spectrum found by search";
        out = out.with_spectrum(idx, found.front());
      }
    }
    lines.push_back(std::move(line));
  }
  return out;
}

CertificationReport certify_spectrality(const ConvolutionSystem& input, Strategy strategy, const CertifyOptions& opt) {
  CertificationReport rep;
  rep.strategy = strategy;
  const ConvolutionSystem system = attach_spectra(input, rep.pairs);
  rep.rows.push_back(admissibility_row(rep.pairs));
  if (!all_admissible(rep.pairs)) {
    rep.verdict = Grade::Fail;
    rep.spectrum_note = "aborted: " + first_inadmissible(rep.pairs);
    return rep;
  }

  const std::size_t terms = system.clamp_depth(opt.contraction_terms);
  if (terms > 0) rep.contraction = contraction_norms(system, terms).norms;
  const CubeSpec C = opt.cube ? *opt.cube : CubeSpec::unit(system.dim());

  switch (strategy) {
    case Strategy::Cube: {
      for (auto& r : cube_rows(system, check_cube_conditions(system, C, opt.distinguished))) rep.rows.push_back(r);
      break;
    }
    case Strategy::Dd: {
      for (auto& r : dd_rows(system)) rep.rows.push_back(r);
      break;
    }
    case Strategy::EquiPositivity: {
      rep.rows.push_back(contraction_row(check_contraction(system)));
      EquiPosOptions eo = opt.equipos;
      if (!eo.cube) eo.cube = C;
      rep.rows.push_back(equipos_row(system, opt.tails, eo));
      break;
    }
  }

  // Spectrum and level verification.
  try {
    if (system.finite()) {
      rep.candidate = canonical_candidate(system, opt.levels.empty() ? std::vector<std::size_t>{*system.length()} : opt.levels);
      rep.spectrum_note = "canonical tower (finite word)";
    } else if (opt.corrected) {
      rep.candidate = corrected_spectrum(system, opt.spectrum);
      rep.spectrum_note = rep.candidate->auto_depths ? "corrected tower, depths chosen by the gap rule"
                                                     : "corrected tower, given depths";
    } else {
      rep.candidate = canonical_candidate(
          system, opt.levels.empty() ? std::vector<std::size_t>{opt.spectrum.first_depth} : opt.levels);
      rep.spectrum_note = "canonical tower";
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CorrectionNotFound && e.code() != ErrorCode::LevelGapTooSmall) throw;
    rep.spectrum_note = std::string("spectrum not built: ") + e.what();
  }
  if (rep.candidate) {
    VerifyOptions vo;
    vo.grid = opt.grid;
    vo.truncation = opt.truncation;
    vo.delta = opt.delta;
    rep.level = verify_level(system, *rep.candidate, rep.candidate->levels.size(), vo);
    const auto& L = *rep.level;
    if (!L.gram.identity()) {
      rep.diagnostics_failed = true;
      rep.diagnostics.push_back("Gram matrix of mu_" + std::to_string(L.depth) + " is not the identity (" +
                                std::to_string(L.gram.nonzero_offdiag) + " nonzero off-diagonal entries)");
    }
    if (!L.upper_ok) {
      rep.diagnostics_failed = true;
      rep.diagnostics.push_back("Q exceeds 1 + 1e-9: max " + format_double(L.q_max));
    }
    if (!L.lower_ok) {
      rep.diagnostics.push_back("Q below 1 - delta on the grid: min " + format_double(L.q_min) + " at " + dvec(L.q_argmin));
    }
  }

  rep.verdict = Grade::Pass;
  for (const auto& r : rep.rows) rep.verdict = min_grade(rep.verdict, r.grade);
  if (rep.diagnostics_failed) rep.verdict = Grade::Fail;
  return rep;
}

std::string CertificationReport::text() const {
  std::ostringstream os;
  os << "certify strategy=" << to_string(strategy) << '\n';
  os << "[pairs]\n";
  for (const auto& p : pairs) {
    os << "  " << p.name << ": " << (p.admissible ? "admissible" : "not admissible") << ", " << p.detail;
    if (!p.L.empty()) os << ", L = " << vec_list(p.L);
    os << '\n';
  }
  if (!contraction.empty()) {
    os << "[contraction]\n";
    for (std::size_t i = 0; i < contraction.size(); ++i)
      os << "  n=" << (i + 1) << " norm=" << format_double(contraction[i]) << '\n';
  }
  os << "[hypotheses]\n";
  for (const auto& r : rows) os << "  " << to_string(r.grade) << "  " << r.name << ": " << r.detail << '\n';
  os << "[spectrum]\n  " << spectrum_note << '\n';
  if (candidate) {
    os << "  depths:";
    for (auto m : candidate->depths) os << ' ' << m;
    os << "\n  sizes:";
    for (const auto& l : candidate->levels) os << ' ' << l.size();
    os << '\n';
    if (!candidate->corrections.empty()) {
      std::size_t nonzero = 0;
      for (const auto& c : candidate->corrections)
        if (std::any_of(c.k.begin(), c.k.end(), [](Int v) { return v != 0; })) ++nonzero;
      os << "  corrections: " << candidate->corrections.size() << " (" << nonzero << " nonzero), eps attained "
         << format_double(candidate->eps_attained) << " (empirical)\n";
      os << "  gap violations: " << candidate->gap_violations.size() << '\n';
    }
  }
  if (level) {
    const auto& L = *level;
    os << "[level " << L.level << "]\n";
    os << "  depth=" << L.depth << " size=" << L.size << '\n';
    os << "  gram: " << (L.gram.identity() ? "identity (exact)" : "not the identity")
       << ", max off-diagonal " << format_double(L.gram.max_offdiag) << '\n';
    os << "  Q grid " << L.grid << " per axis, truncation " << L.truncation << " (heuristic depth): min "
       << format_double(L.q_min) << " at " << dvec(L.q_argmin) << ", max " << format_double(L.q_max) << '\n';
  }
  if (!diagnostics.empty()) {
    os << "[diagnostics]\n";
    for (const auto& d : diagnostics) os << "  " << d << '\n';
  }
  os << "verdict: " << to_string(verdict) << '\n';
  return os.str();
}

std::string CertificationReport::csv() const {
  std::ostringstream os;
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  os << "section,name,value\n";
  for (const auto& r : rows) os << "hypothesis," << quote(r.name) << ',' << to_string(r.grade) << '\n';
  for (std::size_t i = 0; i < contraction.size(); ++i) os << "contraction," << (i + 1) << ',' << format_double(contraction[i]) << '\n';
  if (level) {
    os << "level,depth," << level->depth << '\n';
    os << "level,size," << level->size << '\n';
    os << "level,gram_identity," << (level->gram.identity() ? "true" : "false") << '\n';
    os << "level,q_min," << format_double(level->q_min) << '\n';
    os << "level,q_max," << format_double(level->q_max) << '\n';
    os << "level,truncation," << level->truncation << '\n';
    os << "level,grid," << level->grid << '\n';
  }
  os << "verdict,grade," << to_string(verdict) << '\n';
  return os.str();
}

std::vector<HypothesisRow> hypothesis_matrix(const ConvolutionSystem& input, const MatrixOptions& opt) {
  const char* names[] = {"equi-positive tail family", "empty periodic zero set of a tail limit",
                         "cube conditions with C = t0 + [0,1]^d", "digit-box pairs with a recurring pair of diagonal >= d+1",
                         "digit-box pairs from a finite menu (bounded norms)"};
  std::vector<PairLine> lines;
  const ConvolutionSystem system = attach_spectra(input, lines);
  std::vector<HypothesisRow> rows;
  if (!all_admissible(lines)) {
    for (const char* n : names) rows.push_back({n, Grade::Fail, "not admissible: " + first_inadmissible(lines)});
    return rows;
  }
  const CubeSpec C = opt.cube ? *opt.cube : CubeSpec::unit(system.dim());
  const auto contraction = check_contraction(system);
  const std::size_t tail = system.prefix().size();

  if (!contraction.certified) {
    rows.push_back({names[0], Grade::Fail, "contraction: " + contraction.note});
    rows.push_back({names[1], Grade::Fail, "contraction: " + contraction.note});
  } else {
    EquiPosOptions eo;
    eo.resolution = opt.resolution;
    eo.box = opt.box;
    eo.tail_depth = opt.tail_depth;
    eo.cube = C;
    auto row = equipos_row(system, {tail}, eo);
    row.name = names[0];
    rows.push_back(row);

    const MaskProductEvaluator nu(system, opt.tail_depth, tail);
    auto scan = scan_zero_set([&](std::span<const double> x) { return nu(x); }, system.dim(), opt.resolution,
                              opt.lattice, opt.tol);
    const std::string params = "tail " + std::to_string(tail) + ", grid " + std::to_string(opt.resolution) + ", K " +
                               std::to_string(opt.lattice) + ", tol " + format_double(opt.tol) + ", depth " +
                               std::to_string(opt.tail_depth);
    if (scan.points.empty()) {
      rows.push_back({names[1], Grade::Evidence, "no candidate below tol (" + params + ")"});
    } else {
      rows.push_back({names[1], Grade::Fail, std::to_string(scan.points.size()) + " candidates, first " +
                                                 dvec(scan.points.front()) + " (" + params + ")"});
    }
  }

  const auto cube = check_cube_conditions(system, C);
  if (cube.holds()) {
    rows.push_back({names[2], Grade::Pass, "all clauses hold"});
  } else {
    std::string why;
    for (const auto& r : cube_rows(system, cube))
      if (r.grade != Grade::Pass) {
        why = r.name + " (" + r.detail + ")";
        break;
      }
    rows.push_back({names[2], Grade::Fail, "fails: " + why});
  }

  const auto dd = dd_rows(system);
  const bool dd_ok = std::all_of(dd.begin(), dd.end(), [](const HypothesisRow& r) { return r.grade == Grade::Pass; });
  if (dd_ok) {
    rows.push_back({names[3], Grade::Pass, dd[1].detail + "; " + dd[2].detail});
  } else {
    std::string why;
    for (const auto& r : dd)
      if (r.grade != Grade::Pass) {
        why = r.name + " (" + r.detail + ")";
        break;
      }
    rows.push_back({names[3], Grade::Fail, "fails: " + why});
  }

  if (dd.front().grade != Grade::Pass) {
    rows.push_back({names[4], Grade::Fail, "fails: " + dd.front().detail});
  } else if (system.finite()) {
    rows.push_back({names[4], Grade::Fail, "explicit finite prefix: boundedness of the full sequence is not determined"});
  } else {
    rows.push_back({names[4], Grade::Pass, "eventually periodic word over a finite menu"});
  }
  return rows;
}

}  // namespace infconv
