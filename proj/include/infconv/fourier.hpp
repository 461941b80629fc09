#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "infconv/types.hpp"

namespace infconv {

using Complex = std::complex<double>;
/// Any Fourier transform xi -> mu^(xi).
using Transform = std::function<Complex(std::span<const double>)>;

/// m_B(xi) = sum_b p_b exp(-2 pi i b.xi).
Complex mask_eval(const DigitSet& B, std::span<const double> xi);

/// prod_{k=1..T} m_{B_{n+k}}((R_{n+k}...R_{n+1})^{-T} xi). With start n = 0 this
/// is mu_T^, with start n it is the truncated tail nu_{>n}^.
class MaskProductEvaluator {
 public:
  MaskProductEvaluator(const ConvolutionSystem& system, std::size_t depth, std::size_t start = 0);

  std::size_t depth() const noexcept { return depth_; }
  std::size_t start() const noexcept { return start_; }
  std::size_t dim() const noexcept { return dim_; }
  /// (R_{n+k}...R_{n+1})^{-T}, exact, k = 1..depth.
  const QMat& inverse_transpose(std::size_t k) const { return inv_t_.at(k - 1); }
  /// ||(R_{n+T}...R_{n+1})^{-1}||; 1 for depth 0.
  double tail_norm() const noexcept { return tail_norm_; }
  /// max over used digits of |b|.
  double digit_radius() const noexcept { return digit_radius_; }

  Complex operator()(std::span<const double> xi) const;

  /// Exact fractional phases (c_{k,b} . lambda mod 1) for an integer shift.
  struct Shift {
    std::vector<double> phase;  // flattened over (k, b)
  };
  Shift shift(const IVec& lambda) const;
  /// The transform at lambda + xi, lattice part in exact arithmetic.
  Complex operator()(const Shift& s, std::span<const double> xi) const;
  Complex at(const IVec& lambda, std::span<const double> xi) const { return (*this)(shift(lambda), xi); }

 private:
  std::size_t depth_;
  std::size_t start_;
  std::size_t dim_;
  double tail_norm_ = 1.0;
  double digit_radius_ = 0.0;
  std::vector<QMat> inv_t_;
  std::vector<std::size_t> offset_;        // start of level k in the flattened digit arrays
  std::vector<std::vector<QVec>> exact_;   // c_{k,b} = (R_{n+k}...R_{n+1})^{-1} b
  std::vector<double> coeff_;              // flattened c_{k,b}, dim_ entries each
  std::vector<double> weight_;             // flattened p_b
};

Complex mu_n_hat(const ConvolutionSystem& system, std::size_t n, std::span<const double> xi);
Complex nu_gt_n_hat(const ConvolutionSystem& system, std::size_t n, std::size_t t, std::span<const double> xi);

/// sum_w w exp(-2 pi i x.xi) over the atoms.
Transform atom_transform(const DiscreteMeasure& mu);

/// Q(xi) = sum_{lambda} |mu^(lambda + xi)|^2 with the lattice phases precomputed.
class QFunction {
 public:
  QFunction(const MaskProductEvaluator& eval, std::vector<IVec> lambda);
  double operator()(std::span<const double> xi) const;
  const std::vector<IVec>& lambda() const noexcept { return lambda_; }

 private:
  const MaskProductEvaluator* eval_;
  std::vector<IVec> lambda_;
  std::vector<MaskProductEvaluator::Shift> shifts_;
};

double q_function(const MaskProductEvaluator& eval, const std::vector<IVec>& lambda, std::span<const double> xi);
double q_function(const Transform& f, const std::vector<IVec>& lambda, std::span<const double> xi);

/// |mu^(xi) - mu_T^(xi)| <= 2 pi r |xi| ||(R_T...R_1)^{-1}|| when the tail
/// support lies in a ball of radius r. Only valid if that bound is certified.
struct TruncationBound {
  std::size_t depth = 0;
  double radius = 0.0;
  double inverse_norm = 0.0;
  bool valid = false;
  double at(std::span<const double> xi) const;
};

inline constexpr std::size_t kMaxTruncation = 40;
inline constexpr double kTruncationNorm = 1e-10;

/// min(40, first T with ||(R_T...R_1)^{-1}|| < 1e-10), clamped to the word.
std::size_t default_truncation_depth(const ConvolutionSystem& system, std::size_t start = 0);

/// Uniform half-open grid: x_i = lo + i (hi - lo) / N, i = 0..N-1 per axis.
struct GridBox {
  DVec lo;
  DVec hi;
  std::vector<std::size_t> res;

  static GridBox unit(std::size_t dim, std::size_t n);
  std::size_t dim() const noexcept { return lo.size(); }
  std::size_t size() const;
  /// Point for a flat index, axis 0 fastest.
  DVec point(std::size_t index) const;
  void validate() const;
};

/// Grid values, axis 0 fastest.
struct Raster {
  GridBox box;
  std::vector<double> values;
};

enum class Quantity { MuHat2, Q };

/// Evaluates |mu^|^2 or Q over the grid in parallel; deterministic.
Raster grid_eval(const MaskProductEvaluator& eval, const GridBox& box, Quantity q,
                 const std::vector<IVec>& lambda = {});
Raster grid_eval(const std::function<double(std::span<const double>)>& f, const GridBox& box);

}  // namespace infconv
