#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "infconv/pipeline.hpp"
#include "infconv/types.hpp"

namespace infconv {

struct DistinguishedSpec {
  std::string pair;
  IVec digit;
};

/// Tunables read from the "params" object. Every field has a default.
struct Params {
  std::optional<std::size_t> truncation;
  std::size_t grid = 64;
  double tol = 1e-6;
  int lattice = 8;
  double gamma = 0.1;
  double eps = 1e-4;
  int box = 3;
  std::size_t tail_depth = 30;
  std::size_t atom_cap = 1'000'000;
  std::uint64_t seed = 1;
  std::optional<QVec> cube;
  std::optional<DistinguishedSpec> distinguished;
  std::vector<std::size_t> levels;
  std::size_t first_level = 2;
  std::size_t level_count = 2;
  double eps_min = 1e-4;
  double delta_report = 0.02;
  std::vector<std::size_t> tails{0};
  std::optional<unsigned> threads;
  bool corrected = true;
};

struct Config {
  std::size_t dimension = 0;
  ConvolutionSystem system;
  Params params;
};

/// Parses the JSON document. Schema problems throw Error(Schema) naming the
/// key path; JSON syntax errors report line and column.
Config parse_config_text(const std::string& text, const std::string& origin = "<config>");
Config parse_config(const std::filesystem::path& path);

CertifyOptions certify_options(const Config& cfg);
CorrectedOptions corrected_options(const Params& p);
EquiPosOptions equipos_options(const Params& p);
MatrixOptions matrix_options(const Config& cfg);

}  // namespace infconv
