#include "infconv/fourier.hpp"

#include <cmath>
#include <numbers>

#include "infconv/core.hpp"
#include "infconv/parallel.hpp"

namespace infconv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double t) {
  // exp(-2 pi i t), reduced first so large arguments keep their precision.
  const double r = t - std::nearbyint(t);
  return {std::cos(kTwoPi * r), -std::sin(kTwoPi * r)};
}

}  // namespace

Complex mask_eval(const DigitSet& B, std::span<const double> xi) {
  if (xi.size() != B.dim()) throw Error(ErrorCode::DimensionMismatch, "mask argument has the wrong dimension");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < B.size(); ++i) {
    double t = 0.0;
    for (std::size_t c = 0; c < xi.size(); ++c) t += static_cast<double>(B.digits()[i][c]) * xi[c];
    acc += B.weights()[i].get_d() * unit_phase(t);
  }
  return acc;
}

MaskProductEvaluator::MaskProductEvaluator(const ConvolutionSystem& system, std::size_t depth, std::size_t start)
    : depth_(depth), start_(start), dim_(system.dim()) {
  system.require_depth(start + depth);
  QMat M = QMat::identity(dim_);
  offset_.push_back(0);
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& pair = system.at(start + k);
    M = M * pair.R.inverse();
    inv_t_.push_back(transpose(M));
    std::vector<QVec> level;
    for (std::size_t i = 0; i < pair.B.size(); ++i) {
      const auto& b = pair.B.digits()[i];
      digit_radius_ = std::max(digit_radius_, euclidean_norm(b));
      level.push_back(M * b);
      for (const auto& x : level.back()) coeff_.push_back(x.get_d());
      weight_.push_back(pair.B.weights()[i].get_d());
    }
    exact_.push_back(std::move(level));
    offset_.push_back(weight_.size());
  }
  if (depth > 0) tail_norm_ = operator_norm(M);
}

Complex MaskProductEvaluator::operator()(std::span<const double> xi) const {
  if (xi.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "transform argument has the wrong dimension");
  Complex prod = 1.0;
  for (std::size_t k = 0; k < depth_; ++k) {
    Complex m = 0.0;
    for (std::size_t j = offset_[k]; j < offset_[k + 1]; ++j) {
      double t = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) t += coeff_[j * dim_ + c] * xi[c];
      m += weight_[j] * unit_phase(t);
    }
    prod *= m;
  }
  return prod;
}

MaskProductEvaluator::Shift MaskProductEvaluator::shift(const IVec& lambda) const {
  if (lambda.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "shift has the wrong dimension");
  Shift s;
  s.phase.reserve(weight_.size());
  for (const auto& level : exact_)
    for (const auto& c : level) s.phase.push_back(frac(dot(c, lambda)).get_d());
  return s;
}

Complex MaskProductEvaluator::operator()(const Shift& s, std::span<const double> xi) const {
  if (xi.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "transform argument has the wrong dimension");
  Complex prod = 1.0;
  for (std::size_t k = 0; k < depth_; ++k) {
    Complex m = 0.0;
    for (std::size_t j = offset_[k]; j < offset_[k + 1]; ++j) {
      double t = s.phase[j];
      for (std::size_t c = 0; c < dim_; ++c) t += coeff_[j * dim_ + c] * xi[c];
      m += weight_[j] * unit_phase(t);
    }
    prod *= m;
  }
  return prod;
}

Complex mu_n_hat(const ConvolutionSystem& system, std::size_t n, std::span<const double> xi) {
  return MaskProductEvaluator(system, n)(xi);
}

Complex nu_gt_n_hat(const ConvolutionSystem& system, std::size_t n, std::size_t t, std::span<const double> xi) {
  return MaskProductEvaluator(system, t, n)(xi);
}

Transform atom_transform(const DiscreteMeasure& mu) {
  std::vector<DVec> points;
  std::vector<double> weights;
  for (const auto& a : mu.atoms()) {
    points.push_back(to_double(a.point));
    weights.push_back(a.weight.get_d());
  }
  const std::size_t d = mu.dim();
  return [points = std::move(points), weights = std::move(weights), d](std::span<const double> xi) {
    if (xi.size() != d) throw Error(ErrorCode::DimensionMismatch, "transform argument has the wrong dimension");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double t = 0.0;
      for (std::size_t c = 0; c < d; ++c) t += points[i][c] * xi[c];
      acc += weights[i] * unit_phase(t);
    }
    return acc;
  };
}

QFunction::QFunction(const MaskProductEvaluator& eval, std::vector<IVec> lambda)
    : eval_(&eval), lambda_(std::move(lambda)) {
  shifts_.reserve(lambda_.size());
  for (const auto& l : lambda_) shifts_.push_back(eval.shift(l));
}

double QFunction::operator()(std::span<const double> xi) const {
  double acc = 0.0;
  for (const auto& s : shifts_) acc += std::norm((*eval_)(s, xi));
  return acc;
}

double q_function(const MaskProductEvaluator& eval, const std::vector<IVec>& lambda, std::span<const double> xi) {
  return QFunction(eval, lambda)(xi);
}

double q_function(const Transform& f, const std::vector<IVec>& lambda, std::span<const double> xi) {
  double acc = 0.0;
  DVec p(xi.size());
  for (const auto& l : lambda) {
    if (l.size() != xi.size()) throw Error(ErrorCode::DimensionMismatch, "spectrum element has the wrong dimension");
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = static_cast<double>(l[c]) + xi[c];
    acc += std::norm(f(p));
  }
  return acc;
}

double TruncationBound::at(std::span<const double> xi) const {
  double n = 0.0;
  for (double x : xi) n += x * x;
  return kTwoPi * radius * std::sqrt(n) * inverse_norm;
}

std::size_t default_truncation_depth(const ConvolutionSystem& system, std::size_t start) {
  std::size_t limit = kMaxTruncation;
  if (auto len = system.length()) limit = std::min(limit, *len >= start ? *len - start : 0);
  QMat M = QMat::identity(system.dim());
  for (std::size_t T = 1; T <= limit; ++T) {
    M = M * system.at(start + T).R.inverse();
    if (operator_norm(M) < kTruncationNorm) return T;
  }
  return limit;
}

GridBox GridBox::unit(std::size_t dim, std::size_t n) {
  return GridBox{DVec(dim, 0.0), DVec(dim, 1.0), std::vector<std::size_t>(dim, n)};
}

std::size_t GridBox::size() const {
  std::size_t n = 1;
  for (auto r : res) n *= r;
  return n;
}

DVec GridBox::point(std::size_t index) const {
  DVec x(dim());
  for (std::size_t c = 0; c < dim(); ++c) {
    const std::size_t i = index % res[c];
    index /= res[c];
    x[c] = lo[c] + static_cast<double>(i) * (hi[c] - lo[c]) / static_cast<double>(res[c]);
  }
  return x;
}

void GridBox::validate() const {
  if (lo.empty() || lo.size() != hi.size() || lo.size() != res.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grid box bounds and resolution differ in dimension");
  }
  for (std::size_t c = 0; c < dim(); ++c) {
    if (res[c] == 0) throw Error(ErrorCode::InvalidArgument, "grid resolution must be positive");
    if (!(hi[c] > lo[c])) throw Error(ErrorCode::InvalidArgument, "grid box needs hi > lo on every axis");
  }
}

Raster grid_eval(const std::function<double(std::span<const double>)>& f, const GridBox& box) {
  box.validate();
  Raster r{box, std::vector<double>(box.size(), 0.0)};
  parallel_for(r.values.size(), [&](std::size_t i) {
    const DVec x = box.point(i);
    r.values[i] = f(x);
  });
  return r;
}

Raster grid_eval(const MaskProductEvaluator& eval, const GridBox& box, Quantity q, const std::vector<IVec>& lambda) {
  if (box.dim() != eval.dim()) throw Error(ErrorCode::DimensionMismatch, "grid dimension differs from the system");
  if (q == Quantity::MuHat2) return grid_eval([&](std::span<const double> x) { return std::norm(eval(x)); }, box);
  const QFunction Q(eval, lambda);
  return grid_eval([&](std::span<const double> x) { return Q(x); }, box);
}

}  // namespace infconv
