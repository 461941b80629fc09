#pragma once

#include <cstdint>
#include <vector>

#include "infconv/types.hpp"

namespace infconv {

inline constexpr std::size_t kDefaultAtomCap = 1'000'000;

/// Canonical representative of v modulo R^T Z^d: the unique r = v - R^T z
/// whose coordinates in the basis R^T lie in [0, 1)^d.
IVec canonical_residue(const ExpandingMatrix& R, const IVec& v);

/// All |det R| canonical residues of Z^d / R^T Z^d, lexicographically sorted.
/// Found by scanning the integer bounding box of the parallelepiped R^T [0,1)^d.
std::vector<IVec> residues(const ExpandingMatrix& R);

/// R = diag(m_1..m_d) with every m_i >= 2 and B inside prod {0..m_i-1}.
bool check_Dd_membership(const IMat& R, const std::vector<IVec>& B);

struct ContractionReport {
  std::vector<double> norms;  // ||R_1^{-1} ... R_n^{-1}||, n = 1..n_max
  double threshold = 0.0;
  bool below_threshold = false;  // norms.back() < threshold
};

ContractionReport contraction_norms(const ConvolutionSystem& system, std::size_t n_max, double threshold = 1e-10);

/// (R_q ... R_{p+1})^{-1}, exact. p == q gives the identity.
QMat inverse_product(const ConvolutionSystem& system, std::size_t p, std::size_t q);
/// (R_n ... R_1)^{-1}, exact.
inline QMat inverse_product(const ConvolutionSystem& system, std::size_t n) { return inverse_product(system, 0, n); }
/// R_q ... R_{p+1} as an integer matrix (checked arithmetic).
IMat level_product(const ConvolutionSystem& system, std::size_t p, std::size_t q);

/// Image of a measure under x -> M x.
DiscreteMeasure pushforward(const DiscreteMeasure& mu, const QMat& M);
/// The weighted digit measure sum_b p_b delta_{M b}.
DiscreteMeasure digit_measure(const DigitSet& B, const QMat& M);

DiscreteMeasure convolve_discrete(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// mu_n = delta_{R_1^{-1}B_1} * delta_{(R_2R_1)^{-1}B_2} * ... * delta_{(R_n...R_1)^{-1}B_n}.
/// Throws DepthTooLarge when an intermediate atom count would exceed atom_cap.
DiscreteMeasure build_mu_n(const ConvolutionSystem& system, std::size_t n, std::size_t atom_cap = kDefaultAtomCap);

/// Integer points of [-r, r]^d ordered by squared norm, then lexicographically.
std::vector<IVec> lattice_box(std::size_t d, int r);

/// Monte Carlo points sum_{k<=depth} (R_k...R_1)^{-1} b_k with digits drawn
/// independently by weight. Deterministic in (seed, count), independent of
/// the worker count.
std::vector<DVec> sample(const ConvolutionSystem& system, std::size_t depth, std::size_t count, std::uint64_t seed);

}  // namespace infconv
