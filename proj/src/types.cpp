#include "infconv/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "infconv/core.hpp"

namespace infconv {

ExpandingCheck check_expanding(const IMat& R, double margin) {
  if (!R.square() || R.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "expanding check needs a square matrix");
  if (determinant(R) == 0) throw Error(ErrorCode::NotInvertible, "not invertible");
  const QMat inv = inverse(R);
  double radius = 0.0;
  for (const auto& ev : eigenvalues(inv)) radius = std::max(radius, std::abs(ev));
  double min_mod = INFINITY;
  for (const auto& ev : eigenvalues(R)) min_mod = std::min(min_mod, std::abs(ev));
  if (std::abs(radius - 1.0) <= margin) {
    throw Error(ErrorCode::Borderline, "borderline, refine: spectral radius of the inverse is within tolerance of 1");
  }
  return ExpandingCheck{radius < 1.0 - margin, radius, min_mod};
}

ExpandingMatrix::ExpandingMatrix(IMat m) : m_(std::move(m)) {
  const auto check = check_expanding(m_);
  if (!check.expanding) {
    throw Error(ErrorCode::NotExpanding, "matrix is not expanding (an eigenvalue has modulus <= 1)");
  }
  det_ = determinant(m_);
  inv_ = infconv::inverse(m_);
  inv_t_ = transpose(inv_);
}

Int ExpandingMatrix::abs_det() const { return to_int(abs(det_)); }

DigitSet::DigitSet(std::vector<IVec> digits, std::vector<Rational> weights)
    : digits_(std::move(digits)), weights_(std::move(weights)) {
  if (digits_.empty()) throw Error(ErrorCode::InvalidArgument, "digit set is empty");
  const std::size_t d = digits_.front().size();
  if (d == 0) throw Error(ErrorCode::DimensionMismatch, "digits must have positive dimension");
  std::set<IVec> seen;
  for (const auto& b : digits_) {
    if (b.size() != d) throw Error(ErrorCode::DimensionMismatch, "digit dimension mismatch");
    if (!seen.insert(b).second) throw Error(ErrorCode::InvalidArgument, "duplicate digit (" + to_string(b) + ")");
  }
  if (weights_.empty()) {
    weights_.assign(digits_.size(), Rational(1, digits_.size()));
    for (auto& w : weights_) w.canonicalize();
    uniform_ = true;
    return;
  }
  if (weights_.size() != digits_.size()) throw Error(ErrorCode::SizeMismatch, "weights and digits differ in count");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw Error(ErrorCode::InvalidArgument, "digit weights must be positive");
    total += w;
  }
  for (auto& w : weights_) {
    w /= total;
    w.canonicalize();
  }
  uniform_ = std::all_of(weights_.begin(), weights_.end(), [&](const Rational& w) { return w == weights_.front(); });
}

AdmissiblePair::AdmissiblePair(std::string n, ExpandingMatrix r, DigitSet b, std::optional<std::vector<IVec>> l)
    : name(std::move(n)), R(std::move(r)), B(std::move(b)), L(std::move(l)) {
  if (B.dim() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "pair '" + name + "': digit dimension differs from R");
  if (!L) return;
  if (L->size() != B.size()) {
    throw Error(ErrorCode::SizeMismatch, "pair '" + name + "': #L = " + std::to_string(L->size()) +
                                             " but #B = " + std::to_string(B.size()));
  }
  std::set<IVec> classes;
  for (const auto& l : *L) {
    if (l.size() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "pair '" + name + "': spectrum dimension mismatch");
    if (!classes.insert(canonical_residue(R, l)).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "pair '" + name + "': spectrum elements not distinct modulo R^T Z^d");
    }
  }
}

ConvolutionSystem::ConvolutionSystem(std::vector<AdmissiblePair> menu, std::vector<std::size_t> prefix,
                                     std::vector<std::size_t> cycle)
    : menu_(std::move(menu)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (menu_.empty()) throw Error(ErrorCode::InvalidArgument, "menu is empty");
  const std::size_t d = menu_.front().dim();
  std::set<std::string> names;
  for (const auto& p : menu_) {
    if (p.dim() != d) throw Error(ErrorCode::DimensionMismatch, "menu pairs differ in dimension");
    if (!names.insert(p.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate pair name '" + p.name + "'");
  }
  for (auto idx : prefix_)
    if (idx >= menu_.size()) throw Error(ErrorCode::InvalidArgument, "word prefix refers to an unknown pair");
  for (auto idx : cycle_)
    if (idx >= menu_.size()) throw Error(ErrorCode::InvalidArgument, "word cycle refers to an unknown pair");
}

ConvolutionSystem ConvolutionSystem::constant(AdmissiblePair pair) {
  std::vector<AdmissiblePair> menu;
  menu.push_back(std::move(pair));
  return ConvolutionSystem(std::move(menu), {}, {0});
}

std::optional<std::size_t> ConvolutionSystem::length() const {
  if (finite()) return prefix_.size();
  return std::nullopt;
}

bool ConvolutionSystem::addressable(std::size_t depth) const noexcept {
  return !finite() || depth <= prefix_.size();
}

void ConvolutionSystem::require_depth(std::size_t depth) const {
  if (!addressable(depth)) {
    throw Error(ErrorCode::DepthOutOfRange, "depth " + std::to_string(depth) +
                                                " is beyond the finite word of length " +
                                                std::to_string(prefix_.size()));
  }
}

std::size_t ConvolutionSystem::clamp_depth(std::size_t depth) const noexcept {
  return finite() ? std::min(depth, prefix_.size()) : depth;
}

std::size_t ConvolutionSystem::index_at(std::size_t level) const {
  if (level == 0) throw Error(ErrorCode::DepthOutOfRange, "levels are numbered from 1");
  require_depth(level);
  if (level <= prefix_.size()) return prefix_[level - 1];
  return cycle_[(level - 1 - prefix_.size()) % cycle_.size()];
}

std::size_t ConvolutionSystem::find(std::string_view name) const {
  for (std::size_t i = 0; i < menu_.size(); ++i)
    if (menu_[i].name == name) return i;
  throw Error(ErrorCode::InvalidArgument, "no pair named '" + std::string(name) + "'");
}

std::vector<std::size_t> ConvolutionSystem::used_indices() const {
  std::set<std::size_t> used(prefix_.begin(), prefix_.end());
  used.insert(cycle_.begin(), cycle_.end());
  return {used.begin(), used.end()};
}

ConvolutionSystem ConvolutionSystem::shifted(std::size_t n) const {
  require_depth(n);
  if (n <= prefix_.size()) {
    return ConvolutionSystem(menu_, std::vector<std::size_t>(prefix_.begin() + static_cast<std::ptrdiff_t>(n), prefix_.end()),
                             cycle_);
  }
  const std::size_t rot = (n - prefix_.size()) % cycle_.size();
  std::vector<std::size_t> cyc(cycle_.begin() + static_cast<std::ptrdiff_t>(rot), cycle_.end());
  cyc.insert(cyc.end(), cycle_.begin(), cycle_.begin() + static_cast<std::ptrdiff_t>(rot));
  return ConvolutionSystem(menu_, {}, std::move(cyc));
}

ConvolutionSystem ConvolutionSystem::with_spectrum(std::size_t index, std::vector<IVec> L) const {
  auto menu = menu_;
  const auto& old = menu.at(index);
  menu[index] = AdmissiblePair(old.name, old.R, old.B, std::move(L));
  return ConvolutionSystem(std::move(menu), prefix_, cycle_);
}

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<Atom> atoms) : dim_(dim) {
  std::map<QVec, Rational> merged;
  for (auto& a : atoms) {
    if (a.point.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "atom dimension mismatch");
    if (a.weight <= 0) throw Error(ErrorCode::InvalidArgument, "atom weights must be positive");
    merged[a.point] += a.weight;
  }
  atoms_.reserve(merged.size());
  Rational total = 0;
  for (auto& [p, w] : merged) {
    w.canonicalize();
    total += w;
    atoms_.push_back(Atom{p, w});
  }
  if (total != 1) throw Error(ErrorCode::InvalidArgument, "atom weights sum to " + to_string(total) + ", not 1");
}

DiscreteMeasure DiscreteMeasure::dirac(QVec point) {
  const std::size_t d = point.size();
  return DiscreteMeasure(d, {Atom{std::move(point), Rational(1)}});
}

DiscreteMeasure DiscreteMeasure::uniform(const std::vector<QVec>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "uniform measure on an empty set");
  std::set<QVec> distinct(points.begin(), points.end());
  Rational w(1, distinct.size());
  w.canonicalize();
  std::vector<Atom> atoms;
  for (const auto& p : distinct) atoms.push_back(Atom{p, w});
  return DiscreteMeasure(points.front().size(), std::move(atoms));
}

Rational DiscreteMeasure::total_mass() const {
  Rational s = 0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

Rational DiscreteMeasure::mass_at(const QVec& point) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                             [](const Atom& a, const QVec& p) { return a.point < p; });
  if (it != atoms_.end() && it->point == point) return it->weight;
  return 0;
}

}  // namespace infconv
