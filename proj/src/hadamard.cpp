#include "infconv/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <set>

#include "infconv/core.hpp"
#include "infconv/cyclotomic.hpp"

namespace infconv {

namespace {

std::vector<QVec> scaled_digits(const ExpandingMatrix& R, const std::vector<IVec>& B) {
  std::vector<QVec> out;
  out.reserve(B.size());
  for (const auto& b : B) {
    if (b.size() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "digit dimension differs from R");
    out.push_back(R.inverse() * b);
  }
  return out;
}

std::vector<Rational> mask_phases(const std::vector<QVec>& c, const IVec& v) {
  std::vector<Rational> ph;
  ph.reserve(c.size());
  for (const auto& x : c) ph.push_back(-frac(dot(x, v)));
  return ph;
}

bool vanishes(const std::vector<QVec>& c, const IVec& v) {
  const std::vector<Rational> w(c.size(), Rational(1));
  return CyclotomicSum::from_phases(mask_phases(c, v), w).is_zero();
}

double mask_modulus(const std::vector<QVec>& c, const IVec& v) {
  std::complex<double> acc = 0.0;
  for (const auto& x : c) {
    const double ang = -2.0 * std::numbers::pi * frac(dot(x, v)).get_d();
    acc += std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return std::abs(acc) / static_cast<double>(c.size());
}

}  // namespace

std::vector<std::vector<Rational>> mask_phase_matrix(const ExpandingMatrix& R, const std::vector<IVec>& B,
                                                     const std::vector<IVec>& L) {
  if (B.size() != L.size()) throw Error(ErrorCode::SizeMismatch, "#L differs from #B");
  const auto c = scaled_digits(R, B);
  std::vector<std::vector<Rational>> out(B.size(), std::vector<Rational>(L.size()));
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < L.size(); ++j) {
      if (L[j].size() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "spectrum dimension differs from R");
      out[i][j] = frac(dot(c[i], L[j]));
    }
  return out;
}

AdmissibilityReport check_admissible(const ExpandingMatrix& R, const std::vector<IVec>& B, const std::vector<IVec>& L,
                                     CheckMode mode) {
  if (B.size() != L.size()) throw Error(ErrorCode::SizeMismatch, "#L differs from #B");
  for (const auto& l : L)
    if (l.size() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "spectrum dimension differs from R");
  const auto c = scaled_digits(R, B);

  AdmissibilityReport rep;
  rep.mode = mode;
  bool float_ok = true, exact_ok = true;
  std::string first_float, first_exact;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      const IVec diff = L[i] - L[j];
      const double m = mask_modulus(c, diff);
      rep.max_offdiag = std::max(rep.max_offdiag, m);
      const std::string where = "l = (" + to_string(L[i]) + "), l' = (" + to_string(L[j]) + ")";
      if (m >= kAdmissibleFloatTol && float_ok) {
        float_ok = false;
        first_float = where;
      }
      if (mode == CheckMode::Exact && exact_ok && !vanishes(c, diff)) {
        exact_ok = false;
        first_exact = where;
      }
    }
  }
  rep.float_verdict = float_ok;
  if (mode == CheckMode::Exact) {
    rep.exact_verdict = exact_ok;
    if (exact_ok != float_ok) {
      throw Error(ErrorCode::ToleranceBreach, std::string("tolerance breach: exact says ") +
                                                  (exact_ok ? "admissible" : "not admissible") + ", float says " +
                                                  (float_ok ? "admissible" : "not admissible") +
                                                  " (max off-diagonal " + std::to_string(rep.max_offdiag) + ")");
    }
    rep.admissible = exact_ok;
    if (!exact_ok) rep.detail = "mask does not vanish at " + first_exact;
  } else {
    rep.admissible = float_ok;
    if (!float_ok) rep.detail = "mask does not vanish at " + first_float;
  }
  return rep;
}

AdmissibilityReport check_admissible(const AdmissiblePair& pair, CheckMode mode) {
  if (!pair.L) throw Error(ErrorCode::MissingSpectrum, "pair has no attached spectrum");
  return check_admissible(pair.R, pair.B.digits(), *pair.L, mode);
}

bool mask_vanishes(const ExpandingMatrix& R, const std::vector<IVec>& B, const IVec& v) {
  return vanishes(scaled_digits(R, B), v);
}

std::vector<std::vector<IVec>> find_spectra(const ExpandingMatrix& R, const std::vector<IVec>& B,
                                            std::size_t max_count) {
  std::vector<std::vector<IVec>> out;
  const std::size_t target = B.size();
  if (max_count == 0 || target == 0) return out;
  const auto res = residues(R);
  if (target > res.size()) return out;
  const auto c = scaled_digits(R, B);

  // Zero classes of the mask; an edge (l, l') exists iff l - l' lies in one.
  std::set<IVec> zeros;
  for (const auto& r : res)
    if (vanishes(c, r)) zeros.insert(r);

  const std::size_t n = res.size();
  const auto zero_it = std::find(res.begin(), res.end(), IVec(R.dim(), 0));
  const std::size_t origin = static_cast<std::size_t>(zero_it - res.begin());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      adj[i][j] = adj[j][i] = zeros.count(canonical_residue(R, res[i] - res[j])) ? 1 : 0;

  if (target == 1) {
    out.push_back({res[origin]});
    return out;
  }
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < n; ++i)
    if (adj[origin][i]) cand.push_back(i);

  std::vector<std::size_t> chosen;
  std::function<void(const std::vector<std::size_t>&)> grow = [&](const std::vector<std::size_t>& pool) {
    if (out.size() >= max_count) return;
    if (chosen.size() + 1 == target) {
      std::vector<IVec> L{res[origin]};
      for (auto i : chosen) L.push_back(res[i]);
      std::sort(L.begin(), L.end());
      out.push_back(std::move(L));
      return;
    }
    for (std::size_t a = 0; a < pool.size(); ++a) {
      if (chosen.size() + 1 + (pool.size() - a) < target) return;
      std::vector<std::size_t> next;
      for (std::size_t b = a + 1; b < pool.size(); ++b)
        if (adj[pool[a]][pool[b]]) next.push_back(pool[b]);
      chosen.push_back(pool[a]);
      grow(next);
      chosen.pop_back();
      if (out.size() >= max_count) return;
    }
  };
  grow(cand);
  return out;
}

HadamardTriple compose_pairs(const std::vector<HadamardTriple>& triples) {
  if (triples.empty()) throw Error(ErrorCode::InvalidArgument, "compose_pairs needs at least one triple");
  const std::size_t d = triples.front().R.rows();
  for (const auto& t : triples) {
    if (t.R.rows() != d || t.R.cols() != d) throw Error(ErrorCode::DimensionMismatch, "composed pairs differ in dimension");
    for (const auto& b : t.B)
      if (b.size() != d) throw Error(ErrorCode::DimensionMismatch, "digit dimension mismatch");
    for (const auto& l : t.L)
      if (l.size() != d) throw Error(ErrorCode::DimensionMismatch, "spectrum dimension mismatch");
  }
  auto sumset = [](const std::vector<IVec>& acc, const std::vector<IVec>& add, const IMat& M) {
    std::vector<IVec> out;
    out.reserve(acc.size() * add.size());
    for (const auto& a : acc)
      for (const auto& x : add) out.push_back(a + M * x);
    return out;
  };
  HadamardTriple out;
  out.R = IMat::identity(d);
  out.B = {IVec(d, 0)};
  out.L = {IVec(d, 0)};
  IMat Lt = IMat::identity(d);  // R_1^T ... R_{j-1}^T
  for (const auto& t : triples) {
    // B' = R_j B + B_j, which unrolls to sum_j (R_n...R_{j+1}) B_j.
    std::vector<IVec> scaled;
    for (const auto& b : out.B) scaled.push_back(t.R * b);
    out.B = sumset(scaled, t.B, IMat::identity(d));
    out.L = sumset(out.L, t.L, Lt);
    Lt = Lt * transpose(t.R);
    out.R = t.R * out.R;
  }
  std::sort(out.B.begin(), out.B.end());
  std::sort(out.L.begin(), out.L.end());
  return out;
}

std::vector<IVec> translate_spectrum(const std::vector<IVec>& L, const IVec& l0) {
  std::vector<IVec> out;
  out.reserve(L.size());
  for (const auto& l : L) out.push_back(l + l0);
  return out;
}

std::vector<IVec> translate_digits(const std::vector<IVec>& B, const IVec& t) { return translate_spectrum(B, t); }

std::vector<QVec> pushforward_spectrum(const std::vector<QVec>& lambda, const QMat& M) {
  const QMat inv_t = transpose(inverse(M));
  std::vector<QVec> out;
  out.reserve(lambda.size());
  for (const auto& l : lambda) out.push_back(inv_t * l);
  return out;
}

std::vector<QVec> pushforward_spectrum(const std::vector<IVec>& lambda, const QMat& M) {
  std::vector<QVec> q;
  q.reserve(lambda.size());
  for (const auto& l : lambda) q.push_back(to_rational(l));
  return pushforward_spectrum(q, M);
}

}  // namespace infconv
