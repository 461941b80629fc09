#include "infconv/gram.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "infconv/cyclotomic.hpp"
#include "infconv/parallel.hpp"

namespace infconv {

namespace {

struct Entry {
  bool zero = false;
  Complex value;
};

template <class V>
V negate(const V& v) {
  V out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

// Fills the report from a per-difference evaluator; differences are taken up
// to sign since G is Hermitian.
template <class V, class Eval>
GramReport assemble(const std::vector<V>& lambda, bool keep, Eval&& eval) {
  GramReport rep;
  rep.size = lambda.size();
  std::map<V, std::size_t> index;
  std::vector<V> diffs;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      V d = lambda[i] - lambda[j];
      V nd = negate(d);
      if (nd < d) d = std::move(nd);
      if (index.emplace(d, diffs.size()).second) diffs.push_back(std::move(d));
    }
  std::vector<Entry> entries(diffs.size());
  parallel_for(diffs.size(), [&](std::size_t i) { entries[i] = eval(diffs[i]); });

  rep.exact = true;
  if (keep) rep.matrix.emplace(lambda.size(), std::vector<Complex>(lambda.size(), Complex(1.0, 0.0)));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      V d = lambda[i] - lambda[j];
      V nd = negate(d);
      const bool flipped = nd < d;
      const Entry& e = entries[index.at(flipped ? nd : d)];
      rep.max_offdiag = std::max(rep.max_offdiag, std::abs(e.value));
      if (!e.zero) {
        rep.exact = false;
        ++rep.nonzero_offdiag;
      }
      if (keep) {
        const Complex v = e.zero ? Complex(0.0, 0.0) : (flipped ? std::conj(e.value) : e.value);
        (*rep.matrix)[i][j] = v;
        (*rep.matrix)[j][i] = std::conj(v);
      }
    }
  return rep;
}

Complex unit_phase(const Rational& t) {
  const double r = frac(t).get_d();
  return {std::cos(2.0 * std::numbers::pi * r), -std::sin(2.0 * std::numbers::pi * r)};
}

template <class V>
GramReport gram_generic(const DiscreteMeasure& mu, const std::vector<V>& lambda, bool keep) {
  for (const auto& l : lambda)
    if (l.size() != mu.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency dimension differs from the measure");
  std::vector<Rational> weights;
  for (const auto& a : mu.atoms()) weights.push_back(a.weight);
  return assemble(lambda, keep, [&](const V& d) {
    std::vector<Rational> phases;
    Complex acc = 0.0;
    for (const auto& a : mu.atoms()) {
      Rational t = dot(a.point, d);
      acc += a.weight.get_d() * unit_phase(t);
      phases.push_back(-t);
    }
    return Entry{CyclotomicSum::from_phases(phases, weights).is_zero(), acc};
  });
}

}  // namespace

GramReport gram_matrix(const DiscreteMeasure& mu, const std::vector<IVec>& lambda, bool keep_matrix) {
  return gram_generic(mu, lambda, keep_matrix);
}

GramReport gram_matrix(const DiscreteMeasure& mu, const std::vector<QVec>& lambda, bool keep_matrix) {
  return gram_generic(mu, lambda, keep_matrix);
}

GramReport gram_matrix_product(const ConvolutionSystem& system, std::size_t n, const std::vector<IVec>& lambda,
                               bool keep_matrix) {
  system.require_depth(n);
  for (const auto& l : lambda)
    if (l.size() != system.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency dimension differs from the system");
  // c_{k,b} = (R_k...R_1)^{-1} b, so the k-th factor at v is m_{B_k}((R_k...R_1)^{-T} v).
  std::vector<std::vector<QVec>> scaled;
  std::vector<std::vector<Rational>> weights;
  QMat M = QMat::identity(system.dim());
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& pair = system.at(k);
    M = M * pair.R.inverse();
    std::vector<QVec> level;
    for (const auto& b : pair.B.digits()) level.push_back(M * b);
    scaled.push_back(std::move(level));
    weights.push_back(pair.B.weights());
  }
  return assemble(lambda, keep_matrix, [&](const IVec& d) {
    Entry e{false, Complex(1.0, 0.0)};
    for (std::size_t k = 0; k < scaled.size(); ++k) {
      std::vector<Rational> phases;
      Complex m = 0.0;
      for (std::size_t i = 0; i < scaled[k].size(); ++i) {
        Rational t = dot(scaled[k][i], d);
        m += weights[k][i].get_d() * unit_phase(t);
        phases.push_back(-t);
      }
      e.value *= m;
      if (!e.zero && CyclotomicSum::from_phases(phases, weights[k]).is_zero()) e.zero = true;
    }
    return e;
  });
}

Complex empirical_cf(const std::vector<DVec>& samples, std::span<const double> xi) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "empirical characteristic function of no samples");
  Complex acc = 0.0;
  for (const auto& x : samples) {
    if (x.size() != xi.size()) throw Error(ErrorCode::DimensionMismatch, "sample dimension differs from xi");
    double t = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) t += x[c] * xi[c];
    const double r = t - std::nearbyint(t);
    acc += Complex(std::cos(2.0 * std::numbers::pi * r), -std::sin(2.0 * std::numbers::pi * r));
  }
  return acc / static_cast<double>(samples.size());
}

}  // namespace infconv
