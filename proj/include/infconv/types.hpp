#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infconv/linalg.hpp"

namespace infconv {

/// Result of the expansiveness test: every eigenvalue of R has modulus > 1.
struct ExpandingCheck {
  bool expanding = false;
  double inverse_spectral_radius = 0.0;  // spectral radius of R^{-1}
  double min_eigen_modulus = 0.0;        // smallest |eigenvalue| of R
};

/// Throws NotInvertible for singular R and Borderline when the spectral
/// radius of R^{-1} is within `margin` of 1.
ExpandingCheck check_expanding(const IMat& R, double margin = 1e-9);

/// Square integer matrix whose eigenvalues all have modulus > 1.
class ExpandingMatrix {
 public:
  explicit ExpandingMatrix(IMat m);

  const IMat& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  const Integer& det() const noexcept { return det_; }
  /// |det R| as a machine integer.
  Int abs_det() const;
  const QMat& inverse() const noexcept { return inv_; }
  const QMat& inverse_transpose() const noexcept { return inv_t_; }

  friend bool operator==(const ExpandingMatrix& a, const ExpandingMatrix& b) { return a.m_ == b.m_; }

 private:
  IMat m_;
  Integer det_;
  QMat inv_;
  QMat inv_t_;
};

/// Finite set of distinct integer digits with positive weights summing to 1.
class DigitSet {
 public:
  /// Empty `weights` means uniform. Weights are normalised to sum 1.
  explicit DigitSet(std::vector<IVec> digits, std::vector<Rational> weights = {});

  const std::vector<IVec>& digits() const noexcept { return digits_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return digits_.size(); }
  std::size_t dim() const noexcept { return digits_.front().size(); }
  bool uniform() const noexcept { return uniform_; }

  friend bool operator==(const DigitSet& a, const DigitSet& b) {
    return a.digits_ == b.digits_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<IVec> digits_;
  std::vector<Rational> weights_;
  bool uniform_ = true;
};

/// (R, B) with an optional attached spectrum L. Admissibility itself is not
/// asserted at construction; hadamard::check_admissible decides it.
struct AdmissiblePair {
  AdmissiblePair(std::string name, ExpandingMatrix R, DigitSet B,
                 std::optional<std::vector<IVec>> L = std::nullopt);

  std::string name;
  ExpandingMatrix R;
  DigitSet B;
  std::optional<std::vector<IVec>> L;

  std::size_t dim() const noexcept { return R.dim(); }
};

/// A menu of pairs and an eventually periodic word (prefix, then the cycle
/// repeated forever). An empty cycle makes the system finite.
class ConvolutionSystem {
 public:
  ConvolutionSystem(std::vector<AdmissiblePair> menu, std::vector<std::size_t> prefix,
                    std::vector<std::size_t> cycle);

  /// The self-affine system (R, B, R, B, ...).
  static ConvolutionSystem constant(AdmissiblePair pair);

  std::size_t dim() const noexcept { return menu_.front().dim(); }
  const std::vector<AdmissiblePair>& menu() const noexcept { return menu_; }
  const std::vector<std::size_t>& prefix() const noexcept { return prefix_; }
  const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

  bool finite() const noexcept { return cycle_.empty(); }
  /// Word length for finite systems, nullopt otherwise.
  std::optional<std::size_t> length() const;
  bool addressable(std::size_t depth) const noexcept;
  /// Throws DepthOutOfRange when `depth` letters are not available.
  void require_depth(std::size_t depth) const;
  /// Clamp a requested truncation depth to what the word provides.
  std::size_t clamp_depth(std::size_t depth) const noexcept;

  /// Menu index of letter `level` (1-based, as in R_1, R_2, ...).
  std::size_t index_at(std::size_t level) const;
  const AdmissiblePair& at(std::size_t level) const { return menu_[index_at(level)]; }

  /// Menu index for a pair name; throws InvalidArgument if absent.
  std::size_t find(std::string_view name) const;
  /// Menu indices that occur somewhere in the word.
  std::vector<std::size_t> used_indices() const;

  /// The system with the first n letters dropped (the shift applied n times).
  ConvolutionSystem shifted(std::size_t n) const;

  /// Copy with the spectrum of menu entry `index` replaced.
  ConvolutionSystem with_spectrum(std::size_t index, std::vector<IVec> L) const;

 private:
  std::vector<AdmissiblePair> menu_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> cycle_;
};

struct Atom {
  QVec point;
  Rational weight;

  friend bool operator==(const Atom& a, const Atom& b) { return a.point == b.point && a.weight == b.weight; }
};

/// Finitely supported probability measure with rational atoms. Atoms are
/// merged by exact equality and kept in lexicographic order.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dim, std::vector<Atom> atoms);

  static DiscreteMeasure dirac(QVec point);
  /// delta_A = (1/#A) sum_{a in A} delta_a.
  static DiscreteMeasure uniform(const std::vector<QVec>& points);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  Rational total_mass() const;
  /// Mass carried by an exact point (0 when it is not an atom).
  Rational mass_at(const QVec& point) const;

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return a.dim_ == b.dim_ && a.atoms_ == b.atoms_;
  }

 private:
  std::size_t dim_;
  std::vector<Atom> atoms_;
};

}  // namespace infconv
