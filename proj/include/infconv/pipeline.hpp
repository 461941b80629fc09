#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infconv/core.hpp"
#include "infconv/criteria.hpp"
#include "infconv/hadamard.hpp"
#include "infconv/spectrum.hpp"

namespace infconv {

/// Ordered so that the verdict is the minimum over rows.
enum class Grade { Fail = 0, Evidence = 1, Pass = 2 };
std::string_view to_string(Grade g);
int exit_code(Grade g);

struct HypothesisRow {
  std::string name;
  Grade grade = Grade::Fail;
  std::string detail;
};

enum class Strategy { Cube, Dd, EquiPositivity };
std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct CertifyOptions {
  std::optional<std::size_t> truncation;
  std::size_t grid = 64;
  double delta = 0.02;
  std::optional<CubeSpec> cube;
  std::optional<Distinguished> distinguished;
  bool corrected = true;
  CorrectedOptions spectrum;
  std::vector<std::size_t> levels;  // canonical tower depths when not corrected
  std::vector<std::size_t> tails{0};
  EquiPosOptions equipos;
  std::size_t contraction_terms = 12;
};

struct PairLine {
  std::string name;
  bool admissible = false;
  bool spectrum_found = false;  // L was searched for, not given
  std::vector<IVec> L;
  std::string detail;
};

struct CertificationReport {
  Strategy strategy = Strategy::Cube;
  std::vector<PairLine> pairs;
  std::vector<double> contraction;
  std::vector<HypothesisRow> rows;
  std::optional<SpectrumCandidate> candidate;
  std::string spectrum_note;
  std::optional<LevelReport> level;
  std::vector<std::string> diagnostics;
  bool diagnostics_failed = false;
  Grade verdict = Grade::Fail;

  int exit_code() const { return infconv::exit_code(verdict); }
  std::string text() const;
  std::string csv() const;
};

/// Menu entries used by the word get a spectrum from find_spectra when none
/// is attached. Returns the completed system and fills `lines`.
ConvolutionSystem attach_spectra(const ConvolutionSystem& system, std::vector<PairLine>& lines);

CertificationReport certify_spectrality(const ConvolutionSystem& system, Strategy strategy,
                                        const CertifyOptions& opt = {});

struct MatrixOptions {
  std::optional<CubeSpec> cube;
  std::size_t resolution = 32;
  int box = 3;
  std::size_t tail_depth = 30;
  int lattice = 8;
  double tol = 1e-6;
};

/// One row per sufficient condition, failing clause named in the detail.
std::vector<HypothesisRow> hypothesis_matrix(const ConvolutionSystem& system, const MatrixOptions& opt = {});

}  // namespace infconv
