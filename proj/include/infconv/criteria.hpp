#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infconv/fourier.hpp"
#include "infconv/types.hpp"

namespace infconv {

/// C = t0 + [0,1]^d.
struct CubeSpec {
  QVec t0;

  static CubeSpec unit(std::size_t d) { return CubeSpec{QVec(d, Rational(0))}; }
  std::size_t dim() const noexcept { return t0.size(); }
  std::vector<QVec> vertices() const;
  bool contains(const QVec& x, bool strict) const;
  /// Largest |x| over the cube.
  double radius() const;
};

inline constexpr std::size_t kMaxCubeDim = 20;

struct PairContainment {
  std::size_t index = 0;
  std::string name;
  bool holds = false;        // R^{-1}(C + b) in C for every b
  std::optional<IVec> failing_digit;
  std::optional<QVec> failing_vertex;  // image vertex outside C
};

struct ContractionCheck {
  bool certified = false;   // exact: some power of the cycle product has inverse of norm < 1
  std::size_t power = 0;    // k with ||P^{-k}||_F^2 < 1
  std::string note;
};

/// lim ||R_1^{-1}...R_n^{-1}|| = 0, decided exactly for eventually periodic
/// words through ||(P^k)^{-1}||_F < 1, P the cycle product, k <= 32.
ContractionCheck check_contraction(const ConvolutionSystem& system);

struct Distinguished {
  std::size_t pair = 0;
  IVec digit;
};

struct RecurrenceInfo {
  bool recurs = false;
  bool within_prefix = false;  // finite word: only repeats inside the explicit prefix
  std::string note;
};

/// Whether a menu pair occurs infinitely often (in the cycle) or, for a
/// finite word, at least twice.
RecurrenceInfo recurrence(const ConvolutionSystem& system, std::size_t pair);

struct CubeReport {
  CubeSpec cube;
  ContractionCheck condition_i;
  std::vector<PairContainment> condition_ii;  // every pair used by the word
  bool condition_ii_holds = false;
  std::optional<Distinguished> distinguished;  // the (pair, digit) used for (iii)
  bool condition_iii_holds = false;
  RecurrenceInfo recurrence;
  bool auto_found = false;
  std::string note;

  bool holds() const noexcept {
    return condition_i.certified && condition_ii_holds && condition_iii_holds && recurrence.recurs;
  }
};

/// Vertex test of R^{-1}(C + b) against C, closed or open.
bool image_in_cube(const ExpandingMatrix& R, const IVec& b, const CubeSpec& C, bool strict,
                   std::optional<QVec>* failing_vertex = nullptr);

/// Exact checks of the cube hypotheses. Without `distinguished`, the first
/// recurring (pair, digit) in menu/digit order that satisfies (iii) is used.
CubeReport check_cube_conditions(const ConvolutionSystem& system, const CubeSpec& C,
                                 std::optional<Distinguished> distinguished = std::nullopt);

/// First b (lexicographically) with b + R n - b' outside {0,1}^d for every
/// n in {-1,0,1}^d \ {0} and b' in B. Throws NotInDd when (R, B) is not in D_d.
std::optional<IVec> find_isolating_digit(const IMat& R, const std::vector<IVec>& B);

/// Axis-aligned rational box; a point when lo == hi.
struct Region {
  QVec lo;
  QVec hi;

  static Region point(QVec x) { return Region{x, x}; }
  bool is_point() const { return lo == hi; }
};

/// Union of parallelepipeds atom + M C, a superset of the support of mu_n * (tail).
struct SupportCover {
  std::vector<QVec> atoms;
  std::vector<Rational> weights;
  QMat M;
  CubeSpec cube;

  /// Atoms of mu_n with M = (R_n...R_1)^{-1}; every level after n must satisfy
  /// the closed containment for C, otherwise NoSupportBound.
  static SupportCover from_system(const ConvolutionSystem& system, std::size_t depth, const CubeSpec& C,
                                  std::size_t atom_cap = 1'000'000);
  /// R^{-1} B + R^{-1} [0,1]^d.
  static SupportCover digit_cover(const ExpandingMatrix& R, const DigitSet& B);

  bool contains(const QVec& x) const;
  /// Bounding box of the whole cover.
  Region bounds() const;
};

struct IsolationReport {
  bool holds = false;
  bool mass_certified = false;
  Rational mass_lower = 0;  // certified lower bound on mu(E)
  std::size_t lattice_radius = 0;
  std::optional<IVec> offending_k;
  std::string note;
};

/// Exact atom check: mu(E) > 0 and mu(E + k) = 0 for k != 0.
IsolationReport check_isolation_witness(const DiscreteMeasure& mu, const Region& E, std::size_t lattice_radius = 0);
/// Against a support cover. Disjointness of boxes uses bounding boxes, so a
/// "false" can be conservative. For a point E only membership is checked.
IsolationReport check_isolation_witness(const SupportCover& cover, const Region& E, std::size_t lattice_radius = 0);

struct ZeroScanReport {
  std::size_t resolution = 0;
  int lattice = 0;
  double tol = 0.0;
  std::size_t truncation = 0;
  std::vector<DVec> points;
  std::vector<double> values;  // max_k |f(x + k)| at each candidate
};

/// Grid points x in [0,1)^d with max_{|k|_inf <= K} |f(x + k)| < tol.
ZeroScanReport scan_zero_set(const Transform& f, std::size_t dim, std::size_t resolution, int lattice, double tol);

struct EquiPosOptions {
  std::size_t resolution = 128;
  int box = 3;
  std::size_t tail_depth = 30;
  double eps_min = 1e-4;
  std::optional<CubeSpec> cube;  // support bound for the Lipschitz factor; unit cube when empty
};

struct EquiPosRow {
  DVec x;
  IVec k;
  double value = 0.0;
};

struct EquiPosCertificate {
  bool ok = false;
  std::size_t tail = 0;
  std::size_t tail_depth = 0;
  std::size_t resolution = 0;
  int box = 0;
  double eps = 0.0;
  double eps_min = 0.0;
  double gamma = 0.0;
  std::optional<double> lipschitz;  // 2 pi r when the tail support is certified
  std::optional<double> eps_lower_bound;
  bool empirical = true;
  DVec worst_point;
  std::vector<EquiPosRow> rows;
};

EquiPosCertificate estimate_equipositivity(const ConvolutionSystem& system, std::size_t tail,
                                           const EquiPosOptions& opt = {});

}  // namespace infconv
