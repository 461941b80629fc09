#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infconv/types.hpp"

namespace infconv {

/// theta_{b,l} = (R^{-1} b) . l mod 1, rows indexed by B, columns by L.
std::vector<std::vector<Rational>> mask_phase_matrix(const ExpandingMatrix& R, const std::vector<IVec>& B,
                                                     const std::vector<IVec>& L);

enum class CheckMode { Exact, Float };

struct AdmissibilityReport {
  bool admissible = false;
  CheckMode mode = CheckMode::Exact;
  std::optional<bool> exact_verdict;
  bool float_verdict = false;
  double max_offdiag = 0.0;  // largest |m_B(R^{-T}(l - l'))| over l != l'
  std::string detail;        // first failing pair, empty when admissible
};

inline constexpr double kAdmissibleFloatTol = 1e-12;

/// Unitarity of the normalised matrix [exp(-2 pi i (R^{-1}b).l)]. The float
/// verdict is always computed; in exact mode a disagreement between the two
/// throws ToleranceBreach.
AdmissibilityReport check_admissible(const ExpandingMatrix& R, const std::vector<IVec>& B, const std::vector<IVec>& L,
                                     CheckMode mode = CheckMode::Exact);
AdmissibilityReport check_admissible(const AdmissiblePair& pair, CheckMode mode = CheckMode::Exact);

/// Exactly whether sum_{b in B} exp(-2 pi i (R^{-1}b).v) = 0.
bool mask_vanishes(const ExpandingMatrix& R, const std::vector<IVec>& B, const IVec& v);

/// Spectra L (0 in L, canonical residues) of size #B, lexicographically ordered,
/// at most max_count of them.
std::vector<std::vector<IVec>> find_spectra(const ExpandingMatrix& R, const std::vector<IVec>& B,
                                            std::size_t max_count);

struct HadamardTriple {
  IMat R;
  std::vector<IVec> B;
  std::vector<IVec> L;
};

/// (R_n...R_1, sum_j (R_n...R_{j+1}) B_j, sum_j (R_1^T...R_{j-1}^T) L_j); digit
/// and spectrum lists come back sorted.
HadamardTriple compose_pairs(const std::vector<HadamardTriple>& triples);

std::vector<IVec> translate_spectrum(const std::vector<IVec>& L, const IVec& l0);
std::vector<IVec> translate_digits(const std::vector<IVec>& B, const IVec& t);

/// (M^T)^{-1} Lambda, exact. Throws NotInvertible for singular M.
std::vector<QVec> pushforward_spectrum(const std::vector<QVec>& lambda, const QMat& M);
std::vector<QVec> pushforward_spectrum(const std::vector<IVec>& lambda, const QMat& M);

}  // namespace infconv
