#include "infconv/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "infconv/core.hpp"
#include "infconv/parallel.hpp"

namespace infconv {

namespace {

std::vector<IVec> sumset(const std::vector<IVec>& acc, const std::vector<IVec>& add, const IMat& M) {
  std::vector<IVec> out;
  out.reserve(acc.size() * add.size());
  for (const auto& a : acc)
    for (const auto& x : add) out.push_back(a + M * x);
  return out;
}

// R_{p+1}^T ... R_q^T = (R_q ... R_{p+1})^T.
IMat transposed_block(const ConvolutionSystem& system, std::size_t p, std::size_t q) {
  return transpose(level_product(system, p, q));
}

std::size_t tail_for(const ConvolutionSystem& system, std::size_t m, std::size_t want) {
  if (auto len = system.length()) return std::min(want, *len > m ? *len - m : 0);
  return want;
}

}  // namespace

std::vector<IVec> normalized_spectrum(const std::vector<IVec>& L) {
  if (L.empty()) return L;
  const IVec zero(L.front().size(), 0);
  if (std::find(L.begin(), L.end(), zero) != L.end()) return L;
  const IVec lo = *std::min_element(L.begin(), L.end());
  std::vector<IVec> out;
  for (const auto& l : L) out.push_back(l - lo);
  return out;
}

std::vector<IVec> block_spectrum(const ConvolutionSystem& system, std::size_t p, std::size_t q) {
  if (q < p) throw Error(ErrorCode::InvalidArgument, "block spectrum needs p <= q");
  system.require_depth(q);
  const std::size_t d = system.dim();
  std::vector<IVec> acc{IVec(d, 0)};
  IMat P = IMat::identity(d);
  for (std::size_t k = p + 1; k <= q; ++k) {
    const auto& pair = system.at(k);
    if (!pair.L) throw Error(ErrorCode::MissingSpectrum, "pair has no attached spectrum: '" + pair.name + "'");
    acc = sumset(acc, normalized_spectrum(*pair.L), P);
    P = P * transpose(pair.R.matrix());
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

std::vector<IVec> canonical_spectrum(const ConvolutionSystem& system, std::size_t n) {
  return block_spectrum(system, 0, n);
}

double level_gap(const ConvolutionSystem& system, std::size_t m, const std::vector<IVec>& lambda) {
  const QMat inv_t = transpose(inverse_product(system, m));
  double worst = 0.0;
  for (const auto& l : lambda) worst = std::max(worst, euclidean_norm(inv_t * l));
  return worst;
}

SpectrumCandidate canonical_candidate(const ConvolutionSystem& system, const std::vector<std::size_t>& depths) {
  SpectrumCandidate c;
  c.depths = depths;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (i > 0 && depths[i] <= depths[i - 1]) throw Error(ErrorCode::InvalidArgument, "level depths must increase");
    c.levels.push_back(canonical_spectrum(system, depths[i]));
  }
  return c;
}

SpectrumCandidate corrected_spectrum(const ConvolutionSystem& system, const CorrectedOptions& opt) {
  if (!(opt.gamma > 0.0) || !(opt.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma and eps must be positive");
  if (opt.box < 0) throw Error(ErrorCode::InvalidArgument, "box radius must be non-negative");
  const std::size_t d = system.dim();
  SpectrumCandidate cand;
  cand.gamma = opt.gamma;
  cand.eps = opt.eps;
  cand.box = opt.box;
  cand.auto_depths = opt.depths.empty();

  std::vector<std::size_t> depths = opt.depths;
  if (cand.auto_depths) {
    if (opt.first_depth == 0 || opt.level_count == 0) throw Error(ErrorCode::InvalidArgument, "level depths must be positive");
    depths.push_back(opt.first_depth);
  }
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] == 0) throw Error(ErrorCode::InvalidArgument, "level depths must be positive");
    if (i > 0 && depths[i] <= depths[i - 1]) throw Error(ErrorCode::InvalidArgument, "level depths must increase");
  }
  system.require_depth(depths.front());
  cand.depths.push_back(depths.front());
  cand.levels.push_back(canonical_spectrum(system, depths.front()));

  const auto ks = lattice_box(d, opt.box);
  const std::size_t target_levels = cand.auto_depths ? opt.level_count : depths.size();
  for (std::size_t j = 1; j < target_levels; ++j) {
    const std::size_t mp = cand.depths.back();
    const auto& prev = cand.levels.back();
    std::size_t m = 0;
    if (cand.auto_depths) {
      std::size_t limit = system.clamp_depth(opt.max_depth);
      for (std::size_t t = mp + 1; t <= limit; ++t) {
        if (level_gap(system, t, prev) < opt.gamma / 2) {
          m = t;
          break;
        }
      }
      if (m == 0) {
        throw Error(ErrorCode::LevelGapTooSmall, "level gap too small: no depth up to " + std::to_string(limit) +
                                                     " separates level " + std::to_string(j));
      }
    } else {
      m = depths[j];
    }
    system.require_depth(m);

    // Gap rule on the previous level.
    const QMat inv_t = transpose(inverse_product(system, m));
    double gap = 0.0;
    for (const auto& l : prev) {
      const double g = euclidean_norm(inv_t * l);
      gap = std::max(gap, g);
      if (g >= opt.gamma / 2) {
        if (opt.strict_gap) {
          throw Error(ErrorCode::LevelGapTooSmall, "level gap too small at level " + std::to_string(j + 1) + ": |(R^T)^{-1} (" +
                                                       to_string(l) + ")| = " + std::to_string(g) +
                                                       ", try a larger depth");
        }
        cand.gap_violations.push_back(GapViolation{j + 1, l, g});
      }
    }
    cand.gap_max.push_back(gap);

    const std::size_t T = tail_for(system, m, opt.tail_depth);
    cand.tail_depths.push_back(T);
    const MaskProductEvaluator tail(system, T, m);
    const IMat Rq_t = transposed_block(system, mp, m);
    const QMat Rq_t_inv = inverse(Rq_t);
    const auto block = block_spectrum(system, mp, m);

    std::vector<Correction> corr(block.size());
    parallel_for(block.size(), [&](std::size_t i) {
      const IVec& l = block[i];
      const DVec x = to_double(Rq_t_inv * l);
      Correction c{j + 1, l, IVec(d, 0), 0.0};
      if (std::all_of(l.begin(), l.end(), [](Int v) { return v == 0; })) {
        c.value = std::abs(tail(x));
      } else {
        std::vector<double> vals(ks.size());
        double best = -1.0;
        DVec p(d);
        for (std::size_t a = 0; a < ks.size(); ++a) {
          for (std::size_t c2 = 0; c2 < d; ++c2) p[c2] = x[c2] + static_cast<double>(ks[a][c2]);
          vals[a] = std::abs(tail(p));
          best = std::max(best, vals[a]);
        }
        for (std::size_t a = 0; a < ks.size(); ++a) {
          if (vals[a] >= best - 1e-12) {
            c.k = ks[a];
            c.value = vals[a];
            break;
          }
        }
      }
      corr[i] = std::move(c);
    });

    const IMat Rp_t = transposed_block(system, 0, mp);
    std::vector<IVec> fresh;
    for (const auto& c : corr) {
      if (c.value < opt.eps) {
        throw Error(ErrorCode::CorrectionNotFound, "equi-positivity correction not found at level " +
                                                       std::to_string(j + 1) + ", lambda = (" + to_string(c.lambda) +
                                                       "): best |nu^| = " + std::to_string(c.value));
      }
      cand.eps_attained = std::min(cand.eps_attained, c.value);
      fresh.push_back(c.lambda + Rq_t * c.k);
    }
    auto next = sumset(prev, fresh, Rp_t);
    std::sort(next.begin(), next.end());
    cand.corrections.insert(cand.corrections.end(), corr.begin(), corr.end());
    cand.depths.push_back(m);
    cand.levels.push_back(std::move(next));
  }
  return cand;
}

LevelReport verify_level(const ConvolutionSystem& system, const SpectrumCandidate& cand, std::size_t j,
                         const VerifyOptions& opt) {
  if (j == 0 || j > cand.levels.size()) throw Error(ErrorCode::InvalidArgument, "no such level in the candidate");
  LevelReport rep;
  rep.level = j;
  rep.depth = cand.depths[j - 1];
  const auto& lambda = cand.levels[j - 1];
  rep.size = lambda.size();
  rep.gram = gram_matrix_product(system, rep.depth, lambda);

  rep.truncation = opt.truncation ? system.clamp_depth(*opt.truncation) : default_truncation_depth(system);
  rep.grid = opt.grid;
  const MaskProductEvaluator eval(system, rep.truncation);
  const auto raster = grid_eval(eval, GridBox::unit(system.dim(), opt.grid), Quantity::Q, lambda);
  const auto [lo, hi] = std::minmax_element(raster.values.begin(), raster.values.end());
  rep.q_min = *lo;
  rep.q_max = *hi;
  rep.q_argmin = raster.box.point(static_cast<std::size_t>(lo - raster.values.begin()));
  rep.upper_ok = rep.q_max <= 1.0 + opt.upper_tol;
  rep.lower_ok = rep.q_min >= 1.0 - opt.delta;
  return rep;
}

}  // namespace infconv
