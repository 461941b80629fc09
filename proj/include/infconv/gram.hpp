#pragma once

#include <optional>
#include <vector>

#include "infconv/fourier.hpp"
#include "infconv/types.hpp"

namespace infconv {

/// Gram matrix G_{l,l'} = mu^(l - l') of the exponentials e_l in L^2(mu).
struct GramReport {
  std::size_t size = 0;
  bool exact = false;  // every off-diagonal entry shown to vanish exactly
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
  std::size_t nonzero_offdiag = 0;  // off-diagonal entries that do not vanish exactly
  std::optional<std::vector<std::vector<Complex>>> matrix;

  bool identity() const noexcept { return exact && max_diag_dev == 0.0; }
};

inline constexpr double kGramFloatTol = 1e-10;

GramReport gram_matrix(const DiscreteMeasure& mu, const std::vector<IVec>& lambda, bool keep_matrix = false);
GramReport gram_matrix(const DiscreteMeasure& mu, const std::vector<QVec>& lambda, bool keep_matrix = false);

/// Same matrix for mu_n, read off the product of masks: an entry vanishes iff
/// one of its mask factors vanishes exactly. Never expands the atoms.
GramReport gram_matrix_product(const ConvolutionSystem& system, std::size_t n, const std::vector<IVec>& lambda,
                               bool keep_matrix = false);

/// (1/N) sum_i exp(-2 pi i xi.x_i). Throws on an empty sample list.
Complex empirical_cf(const std::vector<DVec>& samples, std::span<const double> xi);

}  // namespace infconv
