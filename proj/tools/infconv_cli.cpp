// infconv: infinite convolutions of admissible pairs, spectra and certificates.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "infconv/config.hpp"
#include "infconv/core.hpp"
#include "infconv/fourier.hpp"
#include "infconv/gram.hpp"
#include "infconv/io.hpp"
#include "infconv/parallel.hpp"
#include "infconv/pipeline.hpp"

using namespace infconv;

namespace {

constexpr int kExitError = 3;

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const long long v = std::stoll(item, &pos);
    if (pos != item.size() || v < 0) throw Error(ErrorCode::InvalidArgument, "bad list entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw Error(ErrorCode::InvalidArgument, "bad number '" + item + "'");
  }
  return out;
}

// Writes to the named file, or stdout when the name is empty.
class Output {
 public:
  explicit Output(const std::string& path, bool binary = false) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
    if (!*file_) throw Error(ErrorCode::Io, "cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::string config;
  std::string out;
};

Config load(const Common& c, int threads) {
  Config cfg = parse_config(c.config);
  if (threads >= 0) set_thread_count(static_cast<unsigned>(threads));
  else if (cfg.params.threads) set_thread_count(*cfg.params.threads);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infconv: infinite convolutions, spectra and spectrality certificates"};
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto add_config = [](CLI::App* sub, Common& c) {
    sub->add_option("config", c.config, "JSON configuration")->required()->check(CLI::ExistingFile);
  };

  // check-pair
  Common cp;
  std::string cp_pair;
  bool cp_exact = false;
  auto* check_pair = app.add_subcommand("check-pair", "Admissibility of one pair (exit 0 admissible, 1 not)");
  add_config(check_pair, cp);
  check_pair->add_option("--pair", cp_pair, "Pair name")->required();
  check_pair->add_flag("--exact", cp_exact, "Decide with exact cyclotomic arithmetic");

  // find-spectra
  Common fs;
  std::string fs_pair;
  std::size_t fs_max = 10;
  auto* find = app.add_subcommand("find-spectra", "Spectra L of a pair among the residues of R^T");
  add_config(find, fs);
  find->add_option("--pair", fs_pair, "Pair name")->required();
  find->add_option("--max", fs_max, "Largest number of spectra to list");
  find->add_option("--out", fs.out, "CSV file (default stdout)");

  // build
  Common bd;
  std::size_t bd_depth = 0;
  auto* build = app.add_subcommand("build", "Atoms of mu_n as exact rationals");
  add_config(build, bd);
  build->add_option("--depth", bd_depth, "Level n")->required();
  build->add_option("--out", bd.out, "CSV file (default stdout)");

  // spectrum
  Common sp;
  std::size_t sp_depth = 0;
  bool sp_corrected = false;
  std::string sp_levels;
  std::optional<double> sp_gamma, sp_eps;
  std::optional<int> sp_box;
  auto* spectrum = app.add_subcommand("spectrum", "Canonical Lambda_n or the corrected tower");
  add_config(spectrum, sp);
  spectrum->add_option("--depth", sp_depth, "Level n of the canonical spectrum");
  spectrum->add_flag("--corrected", sp_corrected, "Build the corrected tower");
  spectrum->add_option("--levels", sp_levels, "Depths m1,m2,... of the corrected tower");
  spectrum->add_option("--gamma", sp_gamma, "Gap threshold");
  spectrum->add_option("--eps", sp_eps, "Correction floor");
  spectrum->add_option("--box", sp_box, "Correction search radius");
  spectrum->add_option("--out", sp.out, "CSV file (default stdout)");

  // certify
  Common ce;
  std::string ce_strategy = "cube";
  std::optional<std::size_t> ce_grid, ce_trunc;
  std::optional<double> ce_tol;
  std::string ce_csv;
  auto* certify = app.add_subcommand("certify", "Run the hypothesis chain (exit 0 PASS, 1 FAIL, 2 EVIDENCE)");
  add_config(certify, ce);
  certify->add_option("--strategy", ce_strategy, "cube, dd or equipos")
      ->check(CLI::IsMember({"cube", "dd", "equipos"}));
  certify->add_option("--grid", ce_grid, "Q grid points per axis");
  certify->add_option("--truncation", ce_trunc, "Truncation depth of mu^");
  certify->add_option("--tol", ce_tol, "Allowed shortfall of Q below 1 in the report");
  certify->add_option("--csv", ce_csv, "Also write the CSV appendix here");

  // hypotheses
  Common hy;
  std::optional<std::size_t> hy_grid;
  auto* hypotheses = app.add_subcommand("hypotheses", "Which sufficient conditions apply (one row each)");
  add_config(hypotheses, hy);
  hypotheses->add_option("--grid", hy_grid, "Grid for the numeric rows");

  // zeroscan
  Common zs;
  std::optional<std::size_t> zs_grid, zs_depth;
  std::size_t zs_tail = 0;
  std::optional<int> zs_lattice;
  std::optional<double> zs_tol;
  auto* zeroscan = app.add_subcommand("zeroscan", "Candidate points of the periodic zero set of a tail");
  add_config(zeroscan, zs);
  zeroscan->add_option("--tail", zs_tail, "Tail index n");
  zeroscan->add_option("--grid", zs_grid, "Grid points per axis");
  zeroscan->add_option("--lattice", zs_lattice, "Lattice radius K");
  zeroscan->add_option("--tol", zs_tol, "Threshold");
  zeroscan->add_option("--depth", zs_depth, "Truncation depth");
  zeroscan->add_option("--out", zs.out, "CSV file (default stdout)");

  // equipos
  Common ep;
  std::string ep_tails;
  std::optional<std::size_t> ep_grid, ep_depth;
  std::optional<int> ep_box;
  std::optional<double> ep_eps_min;
  auto* equipos = app.add_subcommand("equipos", "Equi-positivity certificates (exit 2 certified, 1 not)");
  add_config(equipos, ep);
  equipos->add_option("--tails", ep_tails, "Tail indices n1,n2,...");
  equipos->add_option("--grid", ep_grid, "Grid points per axis");
  equipos->add_option("--box", ep_box, "Lattice search radius");
  equipos->add_option("--depth", ep_depth, "Tail truncation depth");
  equipos->add_option("--eps-min", ep_eps_min, "Failure threshold");
  equipos->add_option("--out", ep.out, "CSV file (default stdout)");

  // render
  Common rd;
  std::string rd_quantity = "muhat2", rd_box;
  std::size_t rd_res = 256;
  std::optional<std::size_t> rd_depth, rd_level;
  bool rd_binary = false;
  auto* render = app.add_subcommand("render", "16-bit PGM of |mu^|^2 or Q");
  add_config(render, rd);
  render->add_option("--quantity", rd_quantity, "muhat2 or Q")->check(CLI::IsMember({"muhat2", "Q"}));
  render->add_option("--box", rd_box, "x0,x1[,y0,y1] (default [-2,2] per axis)");
  render->add_option("--res", rd_res, "Pixels per axis")->check(CLI::PositiveNumber);
  render->add_option("--depth", rd_depth, "Truncation depth");
  render->add_option("--level", rd_level, "Canonical Lambda_n used for Q");
  render->add_flag("--binary", rd_binary, "P5 instead of P2");
  render->add_option("--out", rd.out, "PGM file")->required();

  // sample
  Common sa;
  std::size_t sa_depth = 0, sa_count = 0;
  std::optional<std::uint64_t> sa_seed;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo points of mu_n");
  add_config(sample_cmd, sa);
  sample_cmd->add_option("--depth", sa_depth, "Level n")->required();
  sample_cmd->add_option("--count", sa_count, "Number of points")->required();
  sample_cmd->add_option("--seed", sa_seed, "Seed");
  sample_cmd->add_option("--out", sa.out, "CSV file (default stdout)");

  // gram
  Common gr;
  std::size_t gr_depth = 0;
  bool gr_matrix = false;
  auto* gram = app.add_subcommand("gram", "Gram matrix of the canonical Lambda_n in L^2(mu_n)");
  add_config(gram, gr);
  gram->add_option("--depth", gr_depth, "Level n")->required();
  gram->add_flag("--matrix", gr_matrix, "Print every entry");
  gram->add_option("--out", gr.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*check_pair) {
      const Config cfg = load(cp, threads);
      const auto& pair = cfg.system.menu()[cfg.system.find(cp_pair)];
      const auto rep = check_admissible(pair, cp_exact ? CheckMode::Exact : CheckMode::Float);
      std::cout << "pair " << pair.name << ": " << (rep.admissible ? "admissible" : "not admissible") << " ("
                << (cp_exact ? "exact" : "float") << "), max off-diagonal " << format_double(rep.max_offdiag) << '\n';
      if (!rep.detail.empty()) std::cout << rep.detail << '\n';
      return rep.admissible ? 0 : 1;
    }
    if (*find) {
      const Config cfg = load(fs, threads);
      const auto& pair = cfg.system.menu()[cfg.system.find(fs_pair)];
      Output out(fs.out);
      write_spectra_csv(out.stream(), find_spectra(pair.R, pair.B.digits(), fs_max), cfg.system.dim());
      return 0;
    }
    if (*build) {
      const Config cfg = load(bd, threads);
      Output out(bd.out);
      write_atoms_csv(out.stream(), build_mu_n(cfg.system, bd_depth, cfg.params.atom_cap));
      return 0;
    }
    if (*spectrum) {
      const Config cfg = load(sp, threads);
      Output out(sp.out);
      if (!sp_corrected) {
        if (sp_depth == 0) throw Error(ErrorCode::InvalidArgument, "spectrum needs --depth or --corrected");
        write_spectrum_csv(out.stream(), canonical_spectrum(cfg.system, sp_depth), cfg.system.dim(),
                           {{"depth", std::to_string(sp_depth)}});
        return 0;
      }
      CorrectedOptions opt = corrected_options(cfg.params);
      if (!sp_levels.empty()) opt.depths = parse_size_list(sp_levels);
      if (sp_gamma) opt.gamma = *sp_gamma;
      if (sp_eps) opt.eps = *sp_eps;
      if (sp_box) opt.box = *sp_box;
      write_candidate_csv(out.stream(), corrected_spectrum(cfg.system, opt), cfg.system.dim());
      return 0;
    }
    if (*certify) {
      const Config cfg = load(ce, threads);
      CertifyOptions opt = certify_options(cfg);
      if (ce_grid) opt.grid = *ce_grid;
      if (ce_trunc) opt.truncation = *ce_trunc;
      if (ce_tol) opt.delta = *ce_tol;
      const auto rep = certify_spectrality(cfg.system, parse_strategy(ce_strategy), opt);
      std::cout << rep.text();
      if (!ce_csv.empty()) {
        Output out(ce_csv);
        out.stream() << rep.csv();
      }
      return rep.exit_code();
    }
    if (*hypotheses) {
      const Config cfg = load(hy, threads);
      MatrixOptions opt = matrix_options(cfg);
      if (hy_grid) opt.resolution = *hy_grid;
      Grade best = Grade::Fail;
      for (const auto& row : hypothesis_matrix(cfg.system, opt)) {
        std::cout << to_string(row.grade) << "  " << row.name << ": " << row.detail << '\n';
        if (static_cast<int>(row.grade) > static_cast<int>(best)) best = row.grade;
      }
      return exit_code(best);
    }
    if (*zeroscan) {
      const Config cfg = load(zs, threads);
      const std::size_t depth = zs_depth ? cfg.system.clamp_depth(zs_tail + *zs_depth) - zs_tail
                                         : default_truncation_depth(cfg.system, zs_tail);
      const MaskProductEvaluator nu(cfg.system, depth, zs_tail);
      auto rep = scan_zero_set([&](std::span<const double> x) { return nu(x); }, cfg.system.dim(),
                               zs_grid.value_or(cfg.params.grid), zs_lattice.value_or(cfg.params.lattice),
                               zs_tol.value_or(cfg.params.tol));
      rep.truncation = depth;
      Output out(zs.out);
      write_zeroscan_csv(out.stream(), rep, cfg.system.dim());
      return 0;
    }
    if (*equipos) {
      const Config cfg = load(ep, threads);
      EquiPosOptions opt = equipos_options(cfg.params);
      if (ep_grid) opt.resolution = *ep_grid;
      if (ep_box) opt.box = *ep_box;
      if (ep_depth) opt.tail_depth = *ep_depth;
      if (ep_eps_min) opt.eps_min = *ep_eps_min;
      const auto tails = ep_tails.empty() ? cfg.params.tails : parse_size_list(ep_tails);
      std::vector<EquiPosCertificate> certs;
      bool ok = true;
      for (auto n : tails) {
        certs.push_back(estimate_equipositivity(cfg.system, n, opt));
        ok = ok && certs.back().ok;
      }
      Output out(ep.out);
      write_equipos_csv(out.stream(), certs, cfg.system.dim());
      return exit_code(ok ? Grade::Evidence : Grade::Fail);
    }
    if (*render) {
      const Config cfg = load(rd, threads);
      const std::size_t d = cfg.system.dim();
      GridBox box;
      box.lo.assign(d, -2.0);
      box.hi.assign(d, 2.0);
      box.res.assign(d, rd_res);
      if (!rd_box.empty()) {
        const auto v = parse_double_list(rd_box);
        if (v.size() != 2 * d) throw Error(ErrorCode::InvalidArgument, "--box needs " + std::to_string(2 * d) + " numbers");
        for (std::size_t i = 0; i < d; ++i) {
          box.lo[i] = v[2 * i];
          box.hi[i] = v[2 * i + 1];
        }
      }
      box.validate();
      const std::size_t depth =
          rd_depth ? cfg.system.clamp_depth(*rd_depth) : default_truncation_depth(cfg.system);
      const MaskProductEvaluator mu(cfg.system, depth);
      Raster raster;
      if (rd_quantity == "Q") {
        const std::size_t level = cfg.system.clamp_depth(rd_level.value_or(cfg.params.first_level));
        raster = grid_eval(mu, box, Quantity::Q, canonical_spectrum(cfg.system, level));
      } else {
        raster = grid_eval(mu, box, Quantity::MuHat2);
      }
      Output out(rd.out, true);
      write_pgm(out.stream(), raster_to_pgm(raster), rd_binary);
      return 0;
    }
    if (*sample_cmd) {
      const Config cfg = load(sa, threads);
      Output out(sa.out);
      write_samples_csv(out.stream(), sample(cfg.system, sa_depth, sa_count, sa_seed.value_or(cfg.params.seed)),
                        cfg.system.dim());
      return 0;
    }
    if (*gram) {
      const Config cfg = load(gr, threads);
      Output out(gr.out);
      write_gram_csv(out.stream(),
                     gram_matrix_product(cfg.system, gr_depth, canonical_spectrum(cfg.system, gr_depth), gr_matrix));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
