#include "infconv/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "infconv/core.hpp"
#include "infconv/parallel.hpp"

namespace infconv {

namespace {

std::vector<IVec> unit_corners(std::size_t d) {
  std::vector<IVec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    IVec u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = static_cast<Int>((mask >> i) & 1u);
    out.push_back(std::move(u));
  }
  return out;
}

// Menu indices of the letters after level n.
std::vector<std::size_t> tail_indices(const ConvolutionSystem& system, std::size_t n) {
  std::set<std::size_t> used;
  for (std::size_t i = n; i < system.prefix().size(); ++i) used.insert(system.prefix()[i]);
  used.insert(system.cycle().begin(), system.cycle().end());
  return {used.begin(), used.end()};
}

bool tail_contained(const ConvolutionSystem& system, std::size_t n, const CubeSpec& C) {
  for (auto idx : tail_indices(system, n)) {
    const auto& pair = system.menu()[idx];
    for (const auto& b : pair.B.digits())
      if (!image_in_cube(pair.R, b, C, false)) return false;
  }
  return true;
}

QVec add(const QVec& a, const IVec& k) {
  QVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += k[i];
  return out;
}

bool boxes_meet(const QVec& alo, const QVec& ahi, const QVec& blo, const QVec& bhi) {
  for (std::size_t i = 0; i < alo.size(); ++i)
    if (ahi[i] < blo[i] || bhi[i] < alo[i]) return false;
  return true;
}

// Integer k with E + k meeting [lo, hi], all coordinates.
void translate_range(const Region& E, const QVec& lo, const QVec& hi, IVec& kmin, IVec& kmax) {
  const std::size_t d = E.lo.size();
  kmin.assign(d, 0);
  kmax.assign(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    kmin[i] = to_int(-floor(E.hi[i] - lo[i]));  // ceil(lo - E.hi)
    kmax[i] = to_int(floor(hi[i] - E.lo[i]));
  }
}

template <class Visit>
bool for_each_in_range(const IVec& kmin, const IVec& kmax, Visit&& visit) {
  const std::size_t d = kmin.size();
  for (std::size_t i = 0; i < d; ++i)
    if (kmin[i] > kmax[i]) return true;
  IVec k = kmin;
  while (true) {
    if (!visit(k)) return false;
    std::size_t i = 0;
    while (i < d && k[i] == kmax[i]) {
      k[i] = kmin[i];
      ++i;
    }
    if (i == d) return true;
    ++k[i];
  }
}

std::size_t range_radius(const IVec& kmin, const IVec& kmax) {
  Int r = 0;
  for (std::size_t i = 0; i < kmin.size(); ++i) r = std::max({r, std::abs(kmin[i]), std::abs(kmax[i])});
  return static_cast<std::size_t>(r);
}

bool is_zero(const IVec& k) {
  return std::all_of(k.begin(), k.end(), [](Int v) { return v == 0; });
}

void validate_region(const Region& E, std::size_t d) {
  if (E.lo.size() != d || E.hi.size() != d) throw Error(ErrorCode::DimensionMismatch, "witness region has the wrong dimension");
  for (std::size_t i = 0; i < d; ++i)
    if (E.hi[i] < E.lo[i]) throw Error(ErrorCode::InvalidArgument, "witness region has hi < lo");
}

}  // namespace

std::vector<QVec> CubeSpec::vertices() const {
  std::vector<QVec> out;
  for (const auto& u : unit_corners(dim())) out.push_back(add(t0, u));
  return out;
}

bool CubeSpec::contains(const QVec& x, bool strict) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rational lo = t0[i], hi = t0[i] + 1;
    if (strict ? (x[i] <= lo || x[i] >= hi) : (x[i] < lo || x[i] > hi)) return false;
  }
  return true;
}

double CubeSpec::radius() const {
  double r = 0.0;
  for (const auto& v : vertices()) r = std::max(r, euclidean_norm(v));
  return r;
}

ContractionCheck check_contraction(const ConvolutionSystem& system) {
  ContractionCheck c;
  if (system.finite()) {
    c.note = "finite word: the limit is not determined by an explicit prefix";
    return c;
  }
  const std::size_t d = system.dim();
  IMat P = IMat::identity(d);
  for (auto idx : system.cycle()) P = system.menu()[idx].R.matrix() * P;
  const QMat Pinv = inverse(P);
  QMat pow = QMat::identity(d);
  for (std::size_t k = 1; k <= 32; ++k) {
    pow = pow * Pinv;
    if (frobenius_norm_squared(pow) < 1) {
      c.certified = true;
      c.power = k;
      c.note = "||(P^" + std::to_string(k) + ")^{-1}||_F < 1 for the cycle product P";
      return c;
    }
  }
  c.note = "no power k <= 32 of the cycle product has inverse Frobenius norm < 1";
  return c;
}

RecurrenceInfo recurrence(const ConvolutionSystem& system, std::size_t pair) {
  RecurrenceInfo r;
  if (!system.finite()) {
    r.recurs = std::find(system.cycle().begin(), system.cycle().end(), pair) != system.cycle().end();
    r.note = r.recurs ? "occurs in the repeating cycle" : "does not occur in the repeating cycle";
    return r;
  }
  const auto n = std::count(system.prefix().begin(), system.prefix().end(), pair);
  r.within_prefix = true;
  r.recurs = n >= 2;
  r.note = "occurs " + std::to_string(n) + " times within explicit prefix";
  return r;
}

bool image_in_cube(const ExpandingMatrix& R, const IVec& b, const CubeSpec& C, bool strict,
                   std::optional<QVec>* failing_vertex) {
  if (C.dim() != R.dim() || b.size() != R.dim()) throw Error(ErrorCode::DimensionMismatch, "cube dimension differs from R");
  for (const auto& v : C.vertices()) {
    QVec y = v;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += b[i];
    y = R.inverse() * y;
    if (!C.contains(y, strict)) {
      if (failing_vertex) *failing_vertex = y;
      return false;
    }
  }
  return true;
}

CubeReport check_cube_conditions(const ConvolutionSystem& system, const CubeSpec& C,
                                 std::optional<Distinguished> distinguished) {
  const std::size_t d = system.dim();
  if (d > kMaxCubeDim) throw Error(ErrorCode::InvalidArgument, "cube check limited to d <= 20");
  if (C.dim() != d) throw Error(ErrorCode::DimensionMismatch, "cube dimension differs from the system");
  CubeReport rep;
  rep.cube = C;
  rep.condition_i = check_contraction(system);

  rep.condition_ii_holds = true;
  for (auto idx : system.used_indices()) {
    const auto& pair = system.menu()[idx];
    PairContainment pc{idx, pair.name, true, std::nullopt, std::nullopt};
    for (const auto& b : pair.B.digits()) {
      std::optional<QVec> v;
      if (!image_in_cube(pair.R, b, C, false, &v)) {
        pc.holds = false;
        pc.failing_digit = b;
        pc.failing_vertex = v;
        break;
      }
    }
    rep.condition_ii_holds = rep.condition_ii_holds && pc.holds;
    rep.condition_ii.push_back(std::move(pc));
  }

  if (distinguished) {
    if (distinguished->pair >= system.menu().size()) throw Error(ErrorCode::InvalidArgument, "distinguished pair out of range");
    const auto& pair = system.menu()[distinguished->pair];
    const auto& digits = pair.B.digits();
    if (std::find(digits.begin(), digits.end(), distinguished->digit) == digits.end()) {
      throw Error(ErrorCode::InvalidArgument, "distinguished digit is not in B of '" + pair.name + "'");
    }
    rep.distinguished = distinguished;
    rep.condition_iii_holds = image_in_cube(pair.R, distinguished->digit, C, true);
    rep.recurrence = recurrence(system, distinguished->pair);
  } else {
    rep.auto_found = true;
    std::optional<Distinguished> fallback;
    for (auto idx : system.used_indices()) {
      const auto& pair = system.menu()[idx];
      for (const auto& b : pair.B.digits()) {
        if (!image_in_cube(pair.R, b, C, true)) continue;
        const auto rec = recurrence(system, idx);
        if (rec.recurs) {
          rep.distinguished = Distinguished{idx, b};
          rep.condition_iii_holds = true;
          rep.recurrence = rec;
          break;
        }
        if (!fallback) fallback = Distinguished{idx, b};
      }
      if (rep.distinguished) break;
    }
    if (!rep.distinguished) {
      if (fallback) {
        rep.distinguished = fallback;
        rep.condition_iii_holds = true;
        rep.recurrence = recurrence(system, fallback->pair);
        rep.note = "only non-recurring pairs map C + b into int(C)";
      } else {
        rep.note = "no pair and digit with R^{-1}(C + b) inside int(C)";
      }
    }
  }
  return rep;
}

std::optional<IVec> find_isolating_digit(const IMat& R, const std::vector<IVec>& B) {
  if (!check_Dd_membership(R, B)) throw Error(ErrorCode::NotInDd, "pair is not in D_d");
  const std::size_t d = R.rows();
  std::vector<IVec> sorted = B;
  std::sort(sorted.begin(), sorted.end());
  std::vector<IVec> steps;
  for (const auto& n : lattice_box(d, 1))
    if (!is_zero(n)) steps.push_back(R * n);
  for (const auto& b : sorted) {
    bool ok = true;
    for (const auto& s : steps) {
      for (const auto& bp : sorted) {
        const IVec v = b + s - bp;
        if (std::all_of(v.begin(), v.end(), [](Int x) { return x == 0 || x == 1; })) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return b;
  }
  return std::nullopt;
}

SupportCover SupportCover::from_system(const ConvolutionSystem& system, std::size_t depth, const CubeSpec& C,
                                       std::size_t atom_cap) {
  if (C.dim() != system.dim()) throw Error(ErrorCode::DimensionMismatch, "cube dimension differs from the system");
  if (!tail_contained(system, depth, C)) {
    throw Error(ErrorCode::NoSupportBound, "cannot bound lattice translates: the tail after level " +
                                               std::to_string(depth) + " does not keep the cube invariant");
  }
  const auto mu = build_mu_n(system, depth, atom_cap);
  SupportCover cover;
  for (const auto& a : mu.atoms()) {
    cover.atoms.push_back(a.point);
    cover.weights.push_back(a.weight);
  }
  cover.M = inverse_product(system, depth);
  cover.cube = C;
  return cover;
}

SupportCover SupportCover::digit_cover(const ExpandingMatrix& R, const DigitSet& B) {
  SupportCover cover;
  for (std::size_t i = 0; i < B.size(); ++i) {
    cover.atoms.push_back(R.inverse() * B.digits()[i]);
    cover.weights.push_back(B.weights()[i]);
  }
  cover.M = R.inverse();
  cover.cube = CubeSpec::unit(R.dim());
  return cover;
}

bool SupportCover::contains(const QVec& x) const {
  const QMat Minv = inverse(M);
  for (const auto& a : atoms) {
    const QVec y = Minv * (x - a);
    if (cube.contains(y, false)) return true;
  }
  return false;
}

namespace {

void piece_offsets(const SupportCover& c, QVec& lo, QVec& hi) {
  const auto verts = c.cube.vertices();
  lo = hi = c.M * verts.front();
  for (const auto& v : verts) {
    const QVec y = c.M * v;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] < lo[i]) lo[i] = y[i];
      if (y[i] > hi[i]) hi[i] = y[i];
    }
  }
}

}  // namespace

Region SupportCover::bounds() const {
  if (atoms.empty()) throw Error(ErrorCode::InvalidArgument, "empty support cover");
  QVec plo, phi;
  piece_offsets(*this, plo, phi);
  Region r{atoms.front() + plo, atoms.front() + phi};
  for (const auto& a : atoms) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] + plo[i] < r.lo[i]) r.lo[i] = a[i] + plo[i];
      if (a[i] + phi[i] > r.hi[i]) r.hi[i] = a[i] + phi[i];
    }
  }
  return r;
}

IsolationReport check_isolation_witness(const DiscreteMeasure& mu, const Region& E, std::size_t lattice_radius) {
  validate_region(E, mu.dim());
  IsolationReport rep;
  rep.lattice_radius = lattice_radius;
  for (const auto& a : mu.atoms()) {
    if (boxes_meet(a.point, a.point, E.lo, E.hi)) rep.mass_lower += a.weight;
  }
  rep.mass_certified = rep.mass_lower > 0;
  bool clear = true;
  for (const auto& a : mu.atoms()) {
    IVec kmin, kmax;
    translate_range(E, a.point, a.point, kmin, kmax);
    rep.lattice_radius = std::max(rep.lattice_radius, range_radius(kmin, kmax));
    for_each_in_range(kmin, kmax, [&](const IVec& k) {
      if (is_zero(k)) return true;
      clear = false;
      if (!rep.offending_k) rep.offending_k = k;
      return false;
    });
  }
  rep.holds = rep.mass_certified && clear;
  rep.note = "exact atom check";
  return rep;
}

IsolationReport check_isolation_witness(const SupportCover& cover, const Region& E, std::size_t lattice_radius) {
  validate_region(E, cover.cube.dim());
  IsolationReport rep;
  QVec plo, phi;
  piece_offsets(cover, plo, phi);
  const Region all = cover.bounds();
  IVec kmin, kmax;
  translate_range(E, all.lo, all.hi, kmin, kmax);
  rep.lattice_radius = std::max(lattice_radius, range_radius(kmin, kmax));

  bool present = false;
  if (E.is_point()) {
    present = cover.contains(E.lo);
    rep.note = "point witness: membership in the cover only, mass not certified";
  } else {
    for (std::size_t i = 0; i < cover.atoms.size(); ++i) {
      const QVec lo = cover.atoms[i] + plo, hi = cover.atoms[i] + phi;
      bool inside = true;
      for (std::size_t c = 0; c < lo.size(); ++c)
        if (lo[c] < E.lo[c] || hi[c] > E.hi[c]) inside = false;
      if (inside) rep.mass_lower += cover.weights[i];
    }
    rep.mass_certified = rep.mass_lower > 0;
    present = rep.mass_certified;
    rep.note = "box witness: translates tested against bounding boxes of the cover pieces";
  }

  bool clear = true;
  for_each_in_range(kmin, kmax, [&](const IVec& k) {
    if (is_zero(k)) return true;
    bool hit = false;
    if (E.is_point()) {
      hit = cover.contains(add(E.lo, k));
    } else {
      const QVec elo = add(E.lo, k), ehi = add(E.hi, k);
      for (const auto& a : cover.atoms) {
        if (boxes_meet(elo, ehi, a + plo, a + phi)) {
          hit = true;
          break;
        }
      }
    }
    if (hit) {
      clear = false;
      rep.offending_k = k;
      return false;
    }
    return true;
  });
  rep.holds = present && clear;
  return rep;
}

ZeroScanReport scan_zero_set(const Transform& f, std::size_t dim, std::size_t resolution, int lattice, double tol) {
  if (resolution == 0) throw Error(ErrorCode::InvalidArgument, "scan resolution must be positive");
  ZeroScanReport rep;
  rep.resolution = resolution;
  rep.lattice = lattice;
  rep.tol = tol;
  const GridBox box = GridBox::unit(dim, resolution);
  const auto ks = lattice_box(dim, lattice);
  std::vector<double> best(box.size(), 0.0);
  parallel_for(box.size(), [&](std::size_t i) {
    const DVec x = box.point(i);
    DVec p(dim);
    double m = 0.0;
    for (const auto& k : ks) {
      for (std::size_t c = 0; c < dim; ++c) p[c] = x[c] + static_cast<double>(k[c]);
      m = std::max(m, std::abs(f(p)));
      if (m >= tol) break;
    }
    best[i] = m;
  });
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i] < tol) {
      rep.points.push_back(box.point(i));
      rep.values.push_back(best[i]);
    }
  }
  return rep;
}

EquiPosCertificate estimate_equipositivity(const ConvolutionSystem& system, std::size_t tail, const EquiPosOptions& opt) {
  if (opt.resolution == 0) throw Error(ErrorCode::InvalidArgument, "grid resolution must be positive");
  system.require_depth(tail);
  const std::size_t d = system.dim();
  std::size_t T = opt.tail_depth;
  if (auto len = system.length()) T = std::min(T, *len - tail);

  EquiPosCertificate cert;
  cert.tail = tail;
  cert.tail_depth = T;
  cert.resolution = opt.resolution;
  cert.box = opt.box;
  cert.eps_min = opt.eps_min;
  cert.gamma = 0.5 / static_cast<double>(opt.resolution);

  const MaskProductEvaluator eval(system, T, tail);
  const GridBox grid = GridBox::unit(d, opt.resolution);
  const auto ks = lattice_box(d, opt.box);
  cert.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    EquiPosRow row{grid.point(i), IVec(d, 0), 0.0};
    if (i == 0) {
      row.value = std::abs(eval(row.x));
    } else {
      std::vector<double> vals(ks.size());
      double best = -1.0;
      DVec p(d);
      for (std::size_t a = 0; a < ks.size(); ++a) {
        for (std::size_t c = 0; c < d; ++c) p[c] = row.x[c] + static_cast<double>(ks[a][c]);
        vals[a] = std::abs(eval(p));
        best = std::max(best, vals[a]);
      }
      for (std::size_t a = 0; a < ks.size(); ++a) {
        if (vals[a] >= best - 1e-12) {
          row.k = ks[a];
          row.value = vals[a];
          break;
        }
      }
    }
    cert.rows[i] = std::move(row);
  });

  cert.eps = cert.rows.front().value;
  cert.worst_point = cert.rows.front().x;
  for (const auto& r : cert.rows) {
    if (r.value < cert.eps) {
      cert.eps = r.value;
      cert.worst_point = r.x;
    }
  }
  const CubeSpec C = opt.cube ? *opt.cube : CubeSpec::unit(d);
  if (tail_contained(system, tail, C)) {
    cert.lipschitz = 2.0 * std::numbers::pi * C.radius();
    cert.eps_lower_bound = cert.eps - *cert.lipschitz * cert.gamma * std::sqrt(static_cast<double>(d));
  }
  cert.ok = cert.eps > opt.eps_min;
  return cert;
}

}  // namespace infconv
