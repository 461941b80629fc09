#include "infconv/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace infconv {

namespace {

void write_meta(std::ostream& os, const CsvMeta& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

std::string coord_header(const std::string& prefix, std::size_t d) {
  std::string s;
  for (std::size_t i = 1; i <= d; ++i) {
    if (i > 1) s += ',';
    s += prefix + std::to_string(i);
  }
  return s;
}

std::string join(const DVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string pgm_token(std::istream& is) {
  std::string tok;
  char c;
  while (is.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok += c;
  }
  if (tok.empty()) throw Error(ErrorCode::Io, "truncated PGM header");
  return tok;
}

std::size_t parse_size(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Io, std::string("bad PGM ") + what + " '" + s + "'");
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_atoms_csv(std::ostream& os, const DiscreteMeasure& mu) {
  os << coord_header("x", mu.dim()) << ",weight\n";
  for (const auto& a : mu.atoms()) os << to_string(a.point) << ',' << to_string(a.weight) << '\n';
}

DiscreteMeasure read_atoms_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::Io, "empty atoms CSV");
  const auto header = split(line, ',');
  if (header.size() < 2 || header.back() != "weight") throw Error(ErrorCode::Io, "atoms CSV header must end in 'weight'");
  const std::size_t d = header.size() - 1;
  std::vector<Atom> atoms;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, ',');
    if (f.size() != d + 1) throw Error(ErrorCode::Io, "atoms CSV line " + std::to_string(lineno) + ": wrong field count");
    Atom a;
    for (std::size_t i = 0; i < d; ++i) a.point.push_back(parse_rational(f[i]));
    a.weight = parse_rational(f[d]);
    atoms.push_back(std::move(a));
  }
  return DiscreteMeasure(d, std::move(atoms));
}

Pgm raster_to_pgm(const Raster& raster) {
  const auto& box = raster.box;
  if (box.dim() == 0 || box.dim() > 2) throw Error(ErrorCode::DimensionMismatch, "PGM output needs a raster of dimension 1 or 2");
  Pgm img;
  img.width = box.res[0];
  img.height = box.dim() == 2 ? box.res[1] : 1;
  img.pixels.resize(img.width * img.height);
  for (std::size_t row = 0; row < img.height; ++row) {
    const std::size_t j = img.height - 1 - row;
    for (std::size_t i = 0; i < img.width; ++i) {
      const double v = std::clamp(raster.values[j * img.width + i], 0.0, 1.0);
      img.pixels[row * img.width + i] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
    }
  }
  return img;
}

void write_pgm(std::ostream& os, const Pgm& img, bool binary) {
  os << (binary ? "P5" : "P2") << '\n' << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  if (binary) {
    for (auto p : img.pixels) {
      const char bytes[2] = {static_cast<char>(p >> 8), static_cast<char>(p & 0xff)};
      os.write(bytes, 2);
    }
    return;
  }
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c) {
      if (c) os << ' ';
      os << img.pixels[r * img.width + c];
    }
    os << '\n';
  }
}

Pgm read_pgm(std::istream& is) {
  const std::string magic = pgm_token(is);
  if (magic != "P2" && magic != "P5") throw Error(ErrorCode::Io, "not a PGM file (magic '" + magic + "')");
  Pgm img;
  img.width = parse_size(pgm_token(is), "width");
  img.height = parse_size(pgm_token(is), "height");
  img.maxval = static_cast<std::uint32_t>(parse_size(pgm_token(is), "maxval"));
  if (img.maxval == 0 || img.maxval > 65535) throw Error(ErrorCode::Io, "PGM maxval out of range");
  const std::size_t n = img.width * img.height;
  img.pixels.resize(n);
  if (magic == "P2") {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = parse_size(pgm_token(is), "pixel");
      if (v > img.maxval) throw Error(ErrorCode::Io, "PGM pixel exceeds maxval");
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  } else {
    const std::size_t bpp = img.maxval > 255 ? 2 : 1;
    for (std::size_t i = 0; i < n; ++i) {
      unsigned char b[2] = {0, 0};
      if (!is.read(reinterpret_cast<char*>(b), static_cast<std::streamsize>(bpp))) {
        throw Error(ErrorCode::Io, "PGM pixel data truncated");
      }
      img.pixels[i] = static_cast<std::uint16_t>(bpp == 2 ? (b[0] << 8 | b[1]) : b[0]);
    }
  }
  return img;
}

void write_samples_csv(std::ostream& os, const std::vector<DVec>& samples, std::size_t dim) {
  os << coord_header("x", dim) << '\n';
  for (const auto& s : samples) os << join(s) << '\n';
}

void write_spectra_csv(std::ostream& os, const std::vector<std::vector<IVec>>& spectra, std::size_t dim) {
  os << "spectrum," << coord_header("l", dim) << '\n';
  for (std::size_t i = 0; i < spectra.size(); ++i)
    for (const auto& l : spectra[i]) os << i << ',' << to_string(l) << '\n';
}

void write_spectrum_csv(std::ostream& os, const std::vector<IVec>& lambda, std::size_t dim, const CsvMeta& meta) {
  write_meta(os, meta);
  os << coord_header("lambda", dim) << '\n';
  for (const auto& l : lambda) os << to_string(l) << '\n';
}

void write_candidate_csv(std::ostream& os, const SpectrumCandidate& cand, std::size_t dim) {
  std::string depths, tails, gaps;
  for (std::size_t i = 0; i < cand.depths.size(); ++i) depths += (i ? ";" : "") + std::to_string(cand.depths[i]);
  for (std::size_t i = 0; i < cand.tail_depths.size(); ++i) tails += (i ? ";" : "") + std::to_string(cand.tail_depths[i]);
  for (std::size_t i = 0; i < cand.gap_max.size(); ++i) gaps += (i ? ";" : "") + format_double(cand.gap_max[i]);
  write_meta(os, {{"depths", depths},
                  {"auto_depths", cand.auto_depths ? "true" : "false"},
                  {"gamma", format_double(cand.gamma)},
                  {"eps", format_double(cand.eps)},
                  {"eps_attained", format_double(cand.eps_attained)},
                  {"box", std::to_string(cand.box)},
                  {"tail_depths", tails},
                  {"gap_max", gaps},
                  {"gap_violations", std::to_string(cand.gap_violations.size())},
                  {"size", std::to_string(cand.levels.empty() ? 0 : cand.levels.back().size())}});
  os << "level," << coord_header("lambda_", dim) << ',' << coord_header("k_", dim) << ",value\n";
  for (const auto& c : cand.corrections)
    os << c.level << ',' << to_string(c.lambda) << ',' << to_string(c.k) << ',' << format_double(c.value) << '\n';
}

void write_zeroscan_csv(std::ostream& os, const ZeroScanReport& rep, std::size_t dim) {
  write_meta(os, {{"resolution", std::to_string(rep.resolution)},
                  {"lattice", std::to_string(rep.lattice)},
                  {"tol", format_double(rep.tol)},
                  {"truncation", std::to_string(rep.truncation)},
                  {"candidates", std::to_string(rep.points.size())}});
  os << coord_header("x", dim) << ",max_abs\n";
  for (std::size_t i = 0; i < rep.points.size(); ++i) os << join(rep.points[i]) << ',' << format_double(rep.values[i]) << '\n';
}

void write_equipos_csv(std::ostream& os, const std::vector<EquiPosCertificate>& certs, std::size_t dim) {
  for (const auto& c : certs) {
    const std::string t = "tail" + std::to_string(c.tail) + ".";
    write_meta(os, {{t + "ok", c.ok ? "true" : "false"},
                    {t + "eps", format_double(c.eps)},
                    {t + "eps_min", format_double(c.eps_min)},
                    {t + "gamma", format_double(c.gamma)},
                    {t + "lipschitz", c.lipschitz ? format_double(*c.lipschitz) : "none"},
                    {t + "eps_lower_bound", c.eps_lower_bound ? format_double(*c.eps_lower_bound) : "none"},
                    {t + "resolution", std::to_string(c.resolution)},
                    {t + "box", std::to_string(c.box)},
                    {t + "tail_depth", std::to_string(c.tail_depth)},
                    {t + "worst_point", join(c.worst_point)},
                    {t + "empirical", "true"}});
  }
  os << "tail," << coord_header("x", dim) << ',' << coord_header("k", dim) << ",value\n";
  for (const auto& c : certs)
    for (const auto& r : c.rows) os << c.tail << ',' << join(r.x) << ',' << to_string(r.k) << ',' << format_double(r.value) << '\n';
}

void write_gram_csv(std::ostream& os, const GramReport& rep) {
  write_meta(os, {{"size", std::to_string(rep.size)},
                  {"exact", rep.exact ? "true" : "false"},
                  {"max_offdiag", format_double(rep.max_offdiag)},
                  {"max_diag_dev", format_double(rep.max_diag_dev)}});
  os << "row,col,re,im\n";
  if (!rep.matrix) return;
  for (std::size_t i = 0; i < rep.size; ++i)
    for (std::size_t j = 0; j < rep.size; ++j) {
      const Complex v = (*rep.matrix)[i][j];
      os << i << ',' << j << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

void write_raster_csv(std::ostream& os, const Raster& raster) {
  os << coord_header("x", raster.box.dim()) << ",value\n";
  for (std::size_t i = 0; i < raster.values.size(); ++i)
    os << join(raster.box.point(i)) << ',' << format_double(raster.values[i]) << '\n';
}

}  // namespace infconv
