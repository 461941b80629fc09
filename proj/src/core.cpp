#include "infconv/core.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "infconv/parallel.hpp"

namespace infconv {

IVec canonical_residue(const ExpandingMatrix& R, const IVec& v) {
  if (v.size() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "residue of a vector of the wrong dimension");
  const QVec coords = R.inverse_transpose() * v;
  IVec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = to_int(floor(coords[i]));
  return v - transpose(R.matrix()) * z;
}

std::vector<IVec> residues(const ExpandingMatrix& R) {
  const std::size_t d = R.dim();
  const IMat Rt = transpose(R.matrix());
  IVec lo(d, 0), hi(d, 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    IVec u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = (mask >> i) & 1u;
    const IVec corner = Rt * u;
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], corner[i]);
      hi[i] = std::max(hi[i], corner[i]);
    }
  }
  // Fraction-free membership test: R^{-T} p = adj p / det in [0,1)^d.
  const QMat& inv_t = R.inverse_transpose();
  std::vector<IVec> out;
  IVec p = lo;
  while (true) {
    const QVec c = inv_t * p;
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0 && x < 1; })) out.push_back(p);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (p[i] < hi[i]) {
        ++p[i];
        for (std::size_t j = i + 1; j < d; ++j) p[j] = lo[j];
        break;
      }
      if (i == 0) {
        i = d + 1;
        break;
      }
    }
    if (i == d + 1 || d == 0) break;
  }
  if (out.size() != static_cast<std::size_t>(R.abs_det())) {
    throw Error(ErrorCode::InvalidArgument, "residue scan found " + std::to_string(out.size()) + " classes, expected " +
                                                std::to_string(R.abs_det()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool check_Dd_membership(const IMat& R, const std::vector<IVec>& B) {
  if (!is_diagonal(R) || B.empty()) return false;
  for (std::size_t i = 0; i < R.rows(); ++i)
    if (R(i, i) < 2) return false;
  for (const auto& b : B) {
    if (b.size() != R.rows()) return false;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] < 0 || b[i] > R(i, i) - 1) return false;
  }
  return true;
}

ContractionReport contraction_norms(const ConvolutionSystem& system, std::size_t n_max, double threshold) {
  system.require_depth(n_max);
  ContractionReport report;
  report.threshold = threshold;
  QMat P = QMat::identity(system.dim());
  for (std::size_t n = 1; n <= n_max; ++n) {
    P = P * system.at(n).R.inverse();
    report.norms.push_back(operator_norm(P));
  }
  report.below_threshold = !report.norms.empty() && report.norms.back() < threshold;
  return report;
}

QMat inverse_product(const ConvolutionSystem& system, std::size_t p, std::size_t q) {
  if (q < p) throw Error(ErrorCode::InvalidArgument, "inverse_product needs p <= q");
  system.require_depth(q);
  QMat P = QMat::identity(system.dim());
  for (std::size_t k = p + 1; k <= q; ++k) P = P * system.at(k).R.inverse();
  return P;
}

IMat level_product(const ConvolutionSystem& system, std::size_t p, std::size_t q) {
  if (q < p) throw Error(ErrorCode::InvalidArgument, "level_product needs p <= q");
  system.require_depth(q);
  IMat P = IMat::identity(system.dim());
  for (std::size_t k = p + 1; k <= q; ++k) P = system.at(k).R.matrix() * P;
  return P;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const QMat& M) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back(Atom{M * a.point, a.weight});
  return DiscreteMeasure(M.rows(), std::move(atoms));
}

DiscreteMeasure digit_measure(const DigitSet& B, const QMat& M) {
  std::vector<Atom> atoms;
  atoms.reserve(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) atoms.push_back(Atom{M * B.digits()[i], B.weights()[i]});
  return DiscreteMeasure(M.rows(), std::move(atoms));
}

DiscreteMeasure convolve_discrete(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim()) throw Error(ErrorCode::DimensionMismatch, "convolution of measures of different dimension");
  std::map<QVec, Rational> merged;
  for (const auto& a : mu.atoms())
    for (const auto& b : nu.atoms()) merged[a.point + b.point] += a.weight * b.weight;
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (auto& [p, w] : merged) atoms.push_back(Atom{p, w});
  return DiscreteMeasure(mu.dim(), std::move(atoms));
}

DiscreteMeasure build_mu_n(const ConvolutionSystem& system, std::size_t n, std::size_t atom_cap) {
  system.require_depth(n);
  DiscreteMeasure mu = DiscreteMeasure::dirac(QVec(system.dim(), Rational(0)));
  QMat M = QMat::identity(system.dim());
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& pair = system.at(k);
    if (mu.size() * pair.B.size() > atom_cap) {
      throw Error(ErrorCode::DepthTooLarge, "depth too large: level " + std::to_string(k) + " would need " +
                                                std::to_string(mu.size() * pair.B.size()) + " atoms (cap " +
                                                std::to_string(atom_cap) + ")");
    }
    M = M * pair.R.inverse();
    mu = convolve_discrete(mu, digit_measure(pair.B, M));
  }
  return mu;
}

std::vector<IVec> lattice_box(std::size_t d, int r) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "lattice box radius must be non-negative");
  std::vector<IVec> pts;
  IVec k(d, -r);
  while (true) {
    pts.push_back(k);
    std::size_t i = 0;
    while (i < d && k[i] == r) k[i++] = -r;
    if (i == d) break;
    ++k[i];
  }
  std::sort(pts.begin(), pts.end(), [](const IVec& a, const IVec& b) {
    const Int na = dot(a, a), nb = dot(b, b);
    if (na != nb) return na < nb;
    return a < b;
  });
  return pts;
}

namespace {

constexpr std::size_t kSampleBlock = 4096;

struct SampleLevel {
  std::vector<DVec> offsets;  // (R_k...R_1)^{-1} b, converted once
  std::vector<double> cumulative;
};

}  // namespace

std::vector<DVec> sample(const ConvolutionSystem& system, std::size_t depth, std::size_t count, std::uint64_t seed) {
  system.require_depth(depth);
  const std::size_t d = system.dim();
  std::vector<SampleLevel> levels;
  QMat M = QMat::identity(d);
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& pair = system.at(k);
    M = M * pair.R.inverse();
    SampleLevel lv;
    double acc = 0.0;
    for (std::size_t i = 0; i < pair.B.size(); ++i) {
      lv.offsets.push_back(to_double(M * pair.B.digits()[i]));
      acc += pair.B.weights()[i].get_d();
      lv.cumulative.push_back(acc);
    }
    lv.cumulative.back() = 1.0;
    levels.push_back(std::move(lv));
  }

  std::vector<DVec> out(count, DVec(d, 0.0));
  const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
  parallel_for(blocks, [&](std::size_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 gen(seq);
    const std::size_t lo = block * kSampleBlock;
    const std::size_t hi = std::min(count, lo + kSampleBlock);
    for (std::size_t s = lo; s < hi; ++s) {
      DVec& x = out[s];
      for (const auto& lv : levels) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        std::size_t i = 0;
        while (i + 1 < lv.cumulative.size() && u >= lv.cumulative[i]) ++i;
        for (std::size_t c = 0; c < d; ++c) x[c] += lv.offsets[i][c];
      }
    }
  });
  return out;
}

}  // namespace infconv
