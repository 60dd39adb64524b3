#include "purikit/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include "purikit/eigen.hpp"

namespace purikit {

ParamVector map_f(const ParamVector& v) { return map_step(v); }

namespace {

std::optional<ParamVector> try_map(const ParamVector& v, int times) {
  try {
    ParamVector w = v;
    for (int t = 0; t < times; ++t) w = map_step(w);
    return w;
  } catch (const DegenerateNormalization&) {
    return std::nullopt;
  }
}

std::optional<std::array<double, 64>> central_jacobian(const ParamVector& v,
                                                       int times, double h) {
  std::array<double, 64> j;
  for (int col = 0; col < 8; ++col) {
    ParamVector vp = v, vm = v;
    vp[col] += h;
    vm[col] -= h;
    const auto fp = try_map(vp, times), fm = try_map(vm, times);
    if (!fp || !fm) return std::nullopt;
    for (int row = 0; row < 8; ++row)
      j[row * 8 + col] = ((*fp)[row] - (*fm)[row]) / (2.0 * h);
  }
  return j;
}

// Gaussian elimination with partial pivoting; nullopt on singularity.
std::optional<ParamVector> solve8(std::array<double, 64> a, ParamVector b) {
  for (int k = 0; k < 8; ++k) {
    int piv = k;
    for (int i = k + 1; i < 8; ++i)
      if (std::abs(a[i * 8 + k]) > std::abs(a[piv * 8 + k])) piv = i;
    if (std::abs(a[piv * 8 + k]) < 1e-14) return std::nullopt;
    if (piv != k) {
      for (int j = 0; j < 8; ++j) std::swap(a[piv * 8 + j], a[k * 8 + j]);
      std::swap(b[piv], b[k]);
    }
    for (int i = k + 1; i < 8; ++i) {
      const double f = a[i * 8 + k] / a[k * 8 + k];
      for (int j = k; j < 8; ++j) a[i * 8 + j] -= f * a[k * 8 + j];
      b[i] -= f * b[k];
    }
  }
  ParamVector x{};
  for (int i = 7; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < 8; ++j) s -= a[i * 8 + j] * x[j];
    x[i] = s / a[i * 8 + i];
  }
  return x;
}

double max_abs_diff(const ParamVector& a, const ParamVector& b) {
  double d = 0;
  for (int i = 0; i < 8; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

struct NewtonResult {
  ParamVector v;
  double residual;
};

std::optional<NewtonResult> newton_refine(ParamVector v, int period,
                                          int max_iters, double residual_tol) {
  for (int it = 0; it < max_iters; ++it) {
    const auto fv = try_map(v, period);
    if (!fv) return std::nullopt;
    ParamVector g;
    double res = 0;
    for (int i = 0; i < 8; ++i) {
      g[i] = (*fv)[i] - v[i];
      res = std::max(res, std::abs(g[i]));
    }
    if (!(res == res)) return std::nullopt;  // NaN
    if (res < 1e-13) return NewtonResult{v, res};

    auto j = central_jacobian(v, period, 1e-7);
    if (!j) return std::nullopt;
    for (int i = 0; i < 8; ++i) (*j)[i * 8 + i] -= 1.0;  // d(g)/dv = J - I
    ParamVector neg_g;
    for (int i = 0; i < 8; ++i) neg_g[i] = -g[i];
    const auto step = solve8(*j, neg_g);
    if (!step) return std::nullopt;

    double vmax = 0;
    for (int i = 0; i < 8; ++i) {
      v[i] += (*step)[i];
      vmax = std::max(vmax, std::abs(v[i]));
    }
    if (vmax > 5.0) return std::nullopt;  // diverged
  }
  const auto fv = try_map(v, period);
  if (!fv) return std::nullopt;
  const double res = max_abs_diff(*fv, v);
  if (res <= residual_tol) return NewtonResult{v, res};
  return std::nullopt;
}

std::vector<ParamVector> build_seeds(int density) {
  const double coh[5] = {0.0, 0.25, -0.25, 0.5, -0.5};
  std::vector<ParamVector> seeds;
  for (int i = 0; i <= density; ++i)
    for (int j = 0; i + j <= density; ++j)
      for (int k = 0; i + j + k <= density; ++k) {
        const double r1 = double(i) / density;
        const double r2 = double(j) / density;
        const double r3 = double(k) / density;
        const double r4 = 1.0 - r1 - r2 - r3;
        for (const double c14 : coh)
          for (const double c23 : coh)
            seeds.push_back({r1, r2, r3, r4, c14, 0.0, c23, 0.0});
      }
  return seeds;
}

}  // namespace

Jacobian8 jacobian(const ParamVector& v, double h) {
  const auto jh = central_jacobian(v, 1, h);
  const auto jh2 = central_jacobian(v, 1, h / 2.0);
  if (!jh || !jh2)
    throw DegenerateNormalization(map_normalization(v), -1);
  Jacobian8 out;
  out.consistency_defect = 0;
  for (int k = 0; k < 64; ++k) {
    out.consistency_defect =
        std::max(out.consistency_defect, std::abs((*jh)[k] - (*jh2)[k]));
    out.m[k] = (4.0 * (*jh2)[k] - (*jh)[k]) / 3.0;  // Richardson step
  }
  return out;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
  }
  return "?";
}

bool is_valid_x_vector(const ParamVector& v, double tol) {
  for (int i = 0; i < 4; ++i)
    if (v[i] < -tol || v[i] > 1.0 + tol) return false;
  if (std::abs(v[0] + v[1] + v[2] + v[3] - 1.0) > tol) return false;
  const double m14 = std::hypot(v[4], v[5]);
  const double m23 = std::hypot(v[6], v[7]);
  if (m14 > std::sqrt(std::max(v[0], 0.0) * std::max(v[3], 0.0)) + tol) return false;
  if (m23 > std::sqrt(std::max(v[1], 0.0) * std::max(v[2], 0.0)) + tol) return false;
  return true;
}

std::vector<FixedPointRecord> find_fixed_points(const FixedPointSearchConfig& cfg) {
  const std::vector<ParamVector> seeds = build_seeds(cfg.grid_density);
  const int n = static_cast<int>(seeds.size());
  std::vector<std::optional<NewtonResult>> hits(seeds.size());

#pragma omp parallel for schedule(dynamic, 16) if (cfg.parallel)
  for (int i = 0; i < n; ++i)
    hits[i] = newton_refine(seeds[i], cfg.period, cfg.max_newton_iters,
                            cfg.residual_tol);

  std::vector<FixedPointRecord> records;
  for (const auto& hit : hits) {
    if (!hit) continue;
    const ParamVector& v = hit->v;

    if (cfg.period == 2) {
      const auto fv = try_map(v, 1);
      if (!fv || max_abs_diff(*fv, v) <= 1e-6) continue;  // plain fixed point
    }
    const bool valid = is_valid_x_vector(v);
    if (cfg.valid_only && !valid) continue;

    bool dup = false;
    for (const auto& r : records) {
      if (max_abs_diff(r.v, v) < cfg.dedup_tol) dup = true;
      if (cfg.period == 2) {
        const auto partner = try_map(r.v, 1);
        if (partner && max_abs_diff(*partner, v) < cfg.dedup_tol) dup = true;
      }
      if (dup) break;
    }
    if (dup) continue;

    // Jacobian of the period map; for period 2 the chain rule product.
    std::array<double, 64> j = jacobian(v, 1e-6).m;
    if (cfg.period == 2) {
      const auto mid = try_map(v, 1);
      if (!mid) continue;
      const std::array<double, 64> j2 = jacobian(*mid, 1e-6).m;
      std::array<double, 64> prod{};
      for (int a = 0; a < 8; ++a)
        for (int c = 0; c < 8; ++c)
          for (int b = 0; b < 8; ++b)
            prod[a * 8 + c] += j2[a * 8 + b] * j[b * 8 + c];
      j = prod;
    }

    const auto eigs =
        dense_eigenvalues_real(std::vector<double>(j.begin(), j.end()), 8);
    std::array<double, 8> mags{};
    for (int i = 0; i < 8; ++i) mags[i] = std::abs(eigs[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());

    Stability verdict = Stability::marginal;
    if (mags[0] < 1.0 - 1e-9)
      verdict = Stability::stable;
    else if (mags[0] > 1.0 + 1e-9)
      verdict = Stability::unstable;

    records.push_back(
        FixedPointRecord{v, cfg.period, hit->residual, mags, verdict, valid});
  }

  std::sort(records.begin(), records.end(),
            [](const FixedPointRecord& a, const FixedPointRecord& b) {
              return std::lexicographical_compare(a.v.begin(), a.v.end(),
                                                  b.v.begin(), b.v.end());
            });
  return records;
}

std::string format_fixed_point_table(const std::vector<FixedPointRecord>& recs) {
  std::ostringstream os;
  os << "  r1        r2        r3        r4        Re r14    Re r23    "
        "radius      residual   verdict\n";
  char buf[160];
  for (const auto& r : recs) {
    std::snprintf(buf, sizeof(buf),
                  "  %-9.6f %-9.6f %-9.6f %-9.6f %-9.6f %-9.6f %-11.6f %-10.2e %s%s\n",
                  r.v[0], r.v[1], r.v[2], r.v[3], r.v[4], r.v[6],
                  r.eigen_magnitudes[0], r.residual, to_string(r.verdict),
                  r.period == 2 ? " (period 2)" : "");
    os << buf;
  }
  return os.str();
}

}  // namespace purikit
