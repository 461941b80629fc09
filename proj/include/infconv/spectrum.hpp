#pragma once

#include <optional>
#include <vector>

#include "infconv/fourier.hpp"
#include "infconv/gram.hpp"
#include "infconv/types.hpp"

namespace infconv {

/// L shifted so that it contains 0 (by its lexicographically smallest element
/// when 0 is missing).
std::vector<IVec> normalized_spectrum(const std::vector<IVec>& L);

/// L_{p,q} = L_{p+1} + R_{p+1}^T L_{p+2} + ... + (R_{p+1}^T...R_{q-1}^T) L_q,
/// each L_k normalised to contain 0. Sorted.
std::vector<IVec> block_spectrum(const ConvolutionSystem& system, std::size_t p, std::size_t q);

/// Lambda_n = L_{0,n}.
std::vector<IVec> canonical_spectrum(const ConvolutionSystem& system, std::size_t n);

struct Correction {
  std::size_t level = 0;  // j, 1-based
  IVec lambda;            // element of L_{m_{j-1}, m_j}
  IVec k;
  double value = 0.0;     // |nu_{>m_j}^(x + k)|
};

struct GapViolation {
  std::size_t level = 0;
  IVec lambda;  // element of Lambda_{j-1}
  double norm = 0.0;
};

struct CorrectedOptions {
  std::vector<std::size_t> depths;  // empty: chosen by the gap rule
  std::size_t first_depth = 2;
  std::size_t level_count = 2;
  std::size_t max_depth = 64;
  double gamma = 0.1;
  double eps = 1e-4;
  int box = 3;
  std::size_t tail_depth = 30;
  bool strict_gap = false;  // throw LevelGapTooSmall instead of recording
};

struct SpectrumCandidate {
  std::vector<std::size_t> depths;
  std::vector<std::vector<IVec>> levels;  // sorted
  std::vector<Correction> corrections;
  std::vector<GapViolation> gap_violations;
  std::vector<double> gap_max;  // per level j >= 2
  double eps_attained = 1.0;
  double gamma = 0.0;
  double eps = 0.0;
  int box = 0;
  std::vector<std::size_t> tail_depths;  // per level j >= 2
  bool auto_depths = false;
};

/// max over lambda in Lambda of |(R_1^T...R_m^T)^{-1} lambda|.
double level_gap(const ConvolutionSystem& system, std::size_t m, const std::vector<IVec>& lambda);

/// The corrected tower Lambda_j = Lambda_{j-1} + R_{0,m_{j-1}}^T {l + R_{m_{j-1},m_j}^T k_l}.
/// Throws CorrectionNotFound when no k in the box reaches eps.
SpectrumCandidate corrected_spectrum(const ConvolutionSystem& system, const CorrectedOptions& opt);

/// Candidate whose levels are the uncorrected tower at the given depths.
SpectrumCandidate canonical_candidate(const ConvolutionSystem& system, const std::vector<std::size_t>& depths);

struct VerifyOptions {
  std::size_t grid = 64;
  std::optional<std::size_t> truncation;  // default_truncation_depth when empty
  double delta = 0.02;
  double upper_tol = 1e-9;
};

struct LevelReport {
  std::size_t level = 0;
  std::size_t depth = 0;
  std::size_t size = 0;
  GramReport gram;
  std::size_t truncation = 0;
  std::size_t grid = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  DVec q_argmin;
  bool upper_ok = false;
  bool lower_ok = false;
};

LevelReport verify_level(const ConvolutionSystem& system, const SpectrumCandidate& cand, std::size_t j,
                         const VerifyOptions& opt = {});

}  // namespace infconv
