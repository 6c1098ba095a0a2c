// Copyright 2026 The cavmems Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cavmems/analytic.hpp"
#include "cavmems/evolution.hpp"
#include "cavmems/frontier.hpp"
#include "cavmems/metrics.hpp"
#include "cavmems/model.hpp"
#include "cavmems/parallel.hpp"

namespace cavmems {

enum class Source { kAnalytic, kSpectral, kRk4 };

inline const char* to_string(Source s) {
  switch (s) {
    case Source::kAnalytic: return "analytic";
    case Source::kSpectral: return "spectral";
    case Source::kRk4: return "rk4";
  }
  return "?";
}

struct TrajectoryPoint {
  double gt = 0.0;
  double concurrence = 0.0;
  double linear_entropy = 0.0;
  double bell_max = 0.0;
  double purity = 1.0;
};

struct Trajectory {
  SystemParams params;
  Source source = Source::kAnalytic;
  std::vector<TrajectoryPoint> points;

  std::vector<PlanePoint> concurrence_plane() const {
    std::vector<PlanePoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back({p.linear_entropy, p.concurrence});
    return out;
  }

  std::vector<PlanePoint> bell_plane() const {
    std::vector<PlanePoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back({p.linear_entropy, p.bell_max});
    return out;
  }
};

/// Per-point metrics of a reduced state; `concurrence` overrides the Wootters
/// value when a closed form is available.
inline TrajectoryPoint measure(double gt, const TwoQubitState& s) {
  return {gt, wootters_concurrence(s), linear_entropy(s), bell_max_general(s), purity(s)};
}

/// Uniform grid gt_i = gt_max i / (n_steps - 1).
inline std::vector<double> uniform_grid(double gt_max, std::size_t n_steps) {
  if (!(gt_max > 0.0) || !std::isfinite(gt_max)) throw ValidationError("gt_max must be finite and > 0");
  if (n_steps < 2) throw ValidationError("n_steps must be >= 2");
  std::vector<double> g(n_steps);
  for (std::size_t i = 0; i < n_steps; ++i) {
    g[i] = gt_max * static_cast<double>(i) / static_cast<double>(n_steps - 1);
  }
  return g;
}

inline Trajectory sweep(const SystemParams& p, double gt_max, std::size_t n_steps, Source source) {
  p.validate();
  const auto grid = uniform_grid(gt_max, n_steps);
  Trajectory traj{p, source, std::vector<TrajectoryPoint>(n_steps)};
  const bool unit_lambda = std::abs(p.lambda - 1.0) <= 1e-12;

  switch (source) {
    case Source::kAnalytic: {
      parallel_for(n_steps, [&](std::size_t i) {
        const double gt = grid[i];
        const auto s = rho_s_analytic(p, gt);
        TrajectoryPoint pt{gt, 0.0, linear_entropy(s), 0.0, purity(s)};
        pt.concurrence = p.gamma > 0.0 ? concurrence_dephased(p, gt) : concurrence_closed(p, gt);
        pt.bell_max = unit_lambda && p.gamma == 0.0 ? bell_max_closed(p, gt) : bell_max_general(s);
        traj.points[i] = pt;
      });
      break;
    }
    case Source::kSpectral: {
      const SpectralPropagator prop(p);
      parallel_for(n_steps, [&](std::size_t i) {
        const double gt = grid[i];
        traj.points[i] = measure(gt, TwoQubitState(trace_out_cavity(prop.state_at(gt))));
      });
      break;
    }
    case Source::kRk4: {
      const double dt = default_rk4_step(p);
      const Rk4Integrator coarse(p, dt);
      const Rk4Integrator fine(p, 0.5 * dt);
      ComplexMatrix rho = initial_state(p);
      ComplexMatrix check = rho;
      for (std::size_t i = 0; i < n_steps; ++i) {
        if (i > 0) {
          const double span = p.time_of(grid[i]) - p.time_of(grid[i - 1]);
          coarse.advance(rho, span);
          fine.advance(check, span);
        }
        traj.points[i] = measure(grid[i], TwoQubitState(trace_out_cavity(rho), kEvolvedStateTolerances));
      }
      const double gap = max_abs_diff(rho, check);
      if (!(gap <= kStepHalvingTolerance)) {
        throw StepSizeError("sweep: RK4 step-halving discrepancy " + std::to_string(gap));
      }
      break;
    }
  }
  return traj;
}

/// Default grid sizes: 5,001 points up to gt = 50, 50,001 up to gt = 500,
/// i.e. a spacing of 0.01 in gt.
inline std::size_t default_steps(double gt_max) {
  return static_cast<std::size_t>(std::llround(gt_max / 0.01)) + 1;
}

namespace detail {

/// Uniform bucket grid for nearest-neighbour queries in the plane.
class PlaneIndex {
 public:
  PlaneIndex(const std::vector<PlanePoint>& pts, double cell) : cell_(cell) {
    lo_m_ = hi_m_ = pts.front().m;
    lo_v_ = hi_v_ = pts.front().value;
    for (const auto& p : pts) {
      lo_m_ = std::min(lo_m_, p.m);
      hi_m_ = std::max(hi_m_, p.m);
      lo_v_ = std::min(lo_v_, p.value);
      hi_v_ = std::max(hi_v_, p.value);
    }
    nx_ = static_cast<long>((hi_m_ - lo_m_) / cell_) + 1;
    ny_ = static_cast<long>((hi_v_ - lo_v_) / cell_) + 1;
    buckets_.resize(static_cast<std::size_t>(nx_ * ny_));
    for (const auto& p : pts) buckets_[index(cx(p.m), cy(p.value))].push_back(p);
  }

  double nearest(PlanePoint q) const {
    const long qx = std::clamp(cx(q.m), 0L, nx_ - 1);
    const long qy = std::clamp(cy(q.value), 0L, ny_ - 1);
    double best = std::numeric_limits<double>::infinity();
    const long max_ring = std::max(nx_, ny_);
    for (long ring = 0; ring <= max_ring; ++ring) {
      for (long ix = qx - ring; ix <= qx + ring; ++ix) {
        for (long iy = qy - ring; iy <= qy + ring; ++iy) {
          if (std::max(std::abs(ix - qx), std::abs(iy - qy)) != ring) continue;
          if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) continue;
          for (const auto& p : buckets_[index(ix, iy)]) {
            best = std::min(best, std::hypot(p.m - q.m, p.value - q.value));
          }
        }
      }
      // Unvisited buckets are at least ring * cell away.
      if (best <= static_cast<double>(ring) * cell_) break;
    }
    return best;
  }

 private:
  long cx(double m) const { return static_cast<long>(std::floor((m - lo_m_) / cell_)); }
  long cy(double v) const { return static_cast<long>(std::floor((v - lo_v_) / cell_)); }
  std::size_t index(long x, long y) const {
    return static_cast<std::size_t>(std::clamp(x, 0L, nx_ - 1) * ny_ + std::clamp(y, 0L, ny_ - 1));
  }

  double cell_;
  double lo_m_, hi_m_, lo_v_, hi_v_;
  long nx_ = 1, ny_ = 1;
  std::vector<std::vector<PlanePoint>> buckets_;
};

}  // namespace detail

/// Asymmetry of the (M, C) pattern under reflection about C = C_MEMS(M0)/2,
/// where M0 is the linear entropy of the first (gt = 0) point. Returns the
/// Hausdorff distance between the point set and its mirror image; the two
/// directed distances coincide because the reflection is an isometry.
inline double mirror_symmetry_check(const Trajectory& traj, const FrontierCurve& mems) {
  if (traj.points.empty()) throw ValidationError("mirror_symmetry_check: empty trajectory");
  if (!(traj.params.lambda < 1.0 - 1e-12)) {
    throw ValidationError("mirror_symmetry_check: requires lambda < 1 (axis undefined at M0 = 0)");
  }
  const double m0 = traj.points.front().linear_entropy;
  const double axis = mems.value_at(m0) / 2.0;
  const auto pts = traj.concurrence_plane();
  std::vector<PlanePoint> mirrored;
  mirrored.reserve(pts.size());
  for (const auto& p : pts) mirrored.push_back({p.m, 2.0 * axis - p.value});

  const detail::PlaneIndex index(mirrored, 0.005);
  std::vector<double> dist(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { dist[i] = index.nearest(pts[i]); });
  return *std::max_element(dist.begin(), dist.end());
}

inline CoverageReport coverage(const Trajectory& traj, const FrontierCurve& curve, double epsilon) {
  const auto pts = curve.kind == FrontierKind::kBellFrontier ? traj.bell_plane() : traj.concurrence_plane();
  return coverage(std::span<const PlanePoint>(pts), curve, epsilon);
}

}  // namespace cavmems
