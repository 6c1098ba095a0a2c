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

// Reference curves in the (linear entropy, measure) plane and statistics
// that relate trajectories to them.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cavmems/linalg.hpp"
#include "cavmems/metrics.hpp"
#include "cavmems/model.hpp"
#include "cavmems/parallel.hpp"
#include "cavmems/state.hpp"

namespace cavmems {

inline constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

enum class FrontierKind { kWerner, kMemsCm, kBellFrontier };

inline const char* to_string(FrontierKind k) {
  switch (k) {
    case FrontierKind::kWerner: return "werner";
    case FrontierKind::kMemsCm: return "mems";
    case FrontierKind::kBellFrontier: return "bell";
  }
  return "?";
}

/// A point of the (M, C) or (M, |B|max) plane.
struct PlanePoint {
  double m = 0.0;
  double value = 0.0;
};

struct FrontierCurve {
  FrontierKind kind = FrontierKind::kWerner;
  std::vector<PlanePoint> points;  // strictly increasing in m

  double max_value() const { return kind == FrontierKind::kBellFrontier ? kTsirelson : 1.0; }

  void validate() const {
    if (points.empty()) throw ValidationError("FrontierCurve: no points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      if (i > 0 && !(pt.m > points[i - 1].m)) throw ValidationError("FrontierCurve: M not strictly increasing");
      if (!(pt.value >= 0.0 && pt.value <= max_value() + 1e-12)) {
        throw ValidationError("FrontierCurve: value out of range");
      }
    }
  }

  /// Piecewise-linear interpolation; 0 outside the sampled range on the
  /// right, first value on the left.
  double value_at(double m) const {
    if (m <= points.front().m) return points.front().value;
    if (m > points.back().m) return 0.0;
    const auto it = std::lower_bound(points.begin(), points.end(), m,
                                     [](const PlanePoint& p, double x) { return p.m < x; });
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double s = (m - a.m) / (b.m - a.m);
    return a.value + s * (b.value - a.value);
  }

  /// Step evaluation from the left grid point. For a non-increasing
  /// envelope this is an upper bound on the curve between grid points.
  double envelope_at(double m) const {
    if (m < points.front().m) return points.front().value;
    const auto it = std::upper_bound(points.begin(), points.end(), m,
                                     [](double x, const PlanePoint& p) { return x < p.m; });
    return (it - 1)->value;
  }
};

// --- Werner states ---------------------------------------------------------

/// p |B+><B+| + (1 - p) I/4
inline ComplexMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner_state: p must lie in [0, 1]");
  ComplexMatrix rho = p * ComplexMatrix::outer(basis::bell_plus(), basis::bell_plus());
  rho += ((1.0 - p) / 4.0) * ComplexMatrix::identity(4);
  return rho;
}

inline double werner_concurrence(double p) { return std::max(0.0, (3.0 * p - 1.0) / 2.0); }
inline double werner_linear_entropy(double p) { return 1.0 - p * p; }

/// Werner family for p in [1/3, 1], emitted with M ascending.
inline FrontierCurve werner_curve(std::size_t n_points) {
  if (n_points < 2) throw ValidationError("werner_curve: n_points must be >= 2");
  FrontierCurve c{FrontierKind::kWerner, {}};
  c.points.reserve(n_points);
  const double span = 3.0 * static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double p = (span - 2.0 * static_cast<double>(i)) / span;
    c.points.push_back({werner_linear_entropy(p), werner_concurrence(p)});
  }
  return c;
}

// --- Maximally entangled mixed states (concurrence vs linear entropy) --------

/// [[h, 0, 0, C/2], [0, 1 - 2h, 0, 0], [0, 0, 0, 0], [C/2, 0, 0, h]] with
/// h = C/2 for C >= 2/3 and h = 1/3 below, in the |ee>,|eg>,|ge>,|gg> ordering.
inline ComplexMatrix mems_state(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("mems_state: C must lie in [0, 1]");
  const double h = c >= 2.0 / 3.0 ? c / 2.0 : 1.0 / 3.0;
  ComplexMatrix rho(4);
  rho(basis::kEE, basis::kEE) = h;
  rho(basis::kGG, basis::kGG) = h;
  rho(basis::kEG, basis::kEG) = 1.0 - 2.0 * h;
  rho(basis::kEE, basis::kGG) = c / 2.0;
  rho(basis::kGG, basis::kEE) = c / 2.0;
  return rho;
}

inline double mems_linear_entropy(double c) {
  return c >= 2.0 / 3.0 ? 8.0 / 3.0 * c * (1.0 - c) : 8.0 / 9.0 - 2.0 / 3.0 * c * c;
}

/// Largest concurrence attainable at linear entropy m (0 beyond 8/9).
inline double mems_concurrence_at(double m) {
  constexpr double kBranch = 16.0 / 27.0;
  if (m <= 0.0) return 1.0;
  if (m <= kBranch) return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 1.5 * m)));
  if (m < 8.0 / 9.0) return std::sqrt(1.5 * (8.0 / 9.0 - m));
  return 0.0;
}

/// MEMS frontier for C from 1 down to 0 (M ascending).
inline FrontierCurve mems_curve(std::size_t n_points) {
  if (n_points < 2) throw ValidationError("mems_curve: n_points must be >= 2");
  FrontierCurve curve{FrontierKind::kMemsCm, {}};
  curve.points.reserve(n_points);
  const double span = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double c = static_cast<double>(n_points - 1 - i) / span;
    curve.points.push_back({mems_linear_entropy(c), c});
  }
  return curve;
}

// --- Random states -----------------------------------------------------------

/// Haar-random pure state (normalised complex Gaussian vector).
template <typename Rng>
std::vector<Complex> random_pure_vector(Rng& rng, std::size_t dim = 4) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& z : v) {
    z = {normal(rng), normal(rng)};
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

/// (1 - x)|psi><psi| + x I/4 with psi Haar-random and x uniform in [0, 1].
template <typename Rng>
ComplexMatrix random_mixed_state(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto psi = random_pure_vector(rng);
  const double x = unit(rng);
  ComplexMatrix rho = (1.0 - x) * ComplexMatrix::outer(psi, psi);
  rho += (x / 4.0) * ComplexMatrix::identity(4);
  return rho;
}

// --- Bell-violation frontier -------------------------------------------------

namespace detail {

inline const std::array<std::vector<Complex>, 4>& bell_basis() {
  static const std::array<std::vector<Complex>, 4> b = [] {
    const double r = 1.0 / std::numbers::sqrt2;
    return std::array<std::vector<Complex>, 4>{
        std::vector<Complex>{r, 0.0, 0.0, r},    // Phi+
        std::vector<Complex>{r, 0.0, 0.0, -r},   // Phi-
        std::vector<Complex>{0.0, r, r, 0.0},    // Psi+ = B+
        std::vector<Complex>{0.0, r, -r, 0.0}};  // Psi- = B-
  }();
  return b;
}

inline std::size_t frontier_bin(double m, std::size_t n_points) {
  const double scaled = m * static_cast<double>(n_points - 1) + 1e-9;
  if (scaled <= 0.0) return 0;
  return std::min(n_points - 1, static_cast<std::size_t>(scaled));
}

inline std::seed_seq make_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
}

}  // namespace detail

using BellWeights = std::array<double, 4>;

/// sum_k w_k |beta_k><beta_k| over the Bell basis (Phi+, Phi-, Psi+, Psi-).
inline ComplexMatrix bell_diagonal_state(const BellWeights& w) {
  ComplexMatrix rho(4);
  for (std::size_t k = 0; k < 4; ++k) {
    if (w[k] < 0.0) throw ValidationError("bell_diagonal_state: negative weight");
    rho += w[k] * ComplexMatrix::outer(detail::bell_basis()[k], detail::bell_basis()[k]);
  }
  return rho;
}

inline BellWeights werner_weights(double p) {
  const double q = (1.0 - p) / 4.0;
  return {q, q, p + q, q};
}

/// (M, |B|max) of a density matrix.
inline PlanePoint bell_plane_point(const ComplexMatrix& rho) {
  const TwoQubitState s(rho);
  return {linear_entropy(s), bell_max_general(s)};
}

struct BellFrontierOptions {
  std::size_t local_iterations = 400;
  std::size_t chunks = 16;
};

/// Numerical upper envelope of |B|max against M on the grid M_i = i/(n-1).
/// Entry i estimates sup{|B|max(rho) : M(rho) >= M_i} from seeded random
/// Bell-diagonal and rank-perturbed MEMS states, Werner/MEMS seeds on the
/// grid, and a constrained local search per grid point. The running maximum
/// from the high-M end makes the result non-increasing.
inline FrontierCurve bell_frontier(std::size_t n_points, std::size_t samples, std::uint64_t seed,
                                   const BellFrontierOptions& opts = {}) {
  if (n_points < 2) throw ValidationError("bell_frontier: n_points must be >= 2");
  if (samples < 100000) throw ValidationError("bell_frontier: need at least 1e5 samples");

  struct Best {
    double value = -1.0;
    BellWeights weights{};  // Bell-diagonal argmax, if any
    bool has_weights = false;
  };
  auto merge = [](Best& into, const Best& from) {
    if (from.value > into.value) into = from;
  };

  const std::size_t chunks = std::max<std::size_t>(1, opts.chunks);
  std::vector<std::vector<Best>> per_chunk(chunks, std::vector<Best>(n_points));
  parallel_for(chunks, [&](std::size_t c) {
    auto seq = detail::make_seed(seed, 1, c);
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    auto& best = per_chunk[c];
    const std::size_t lo = samples * c / chunks;
    const std::size_t hi = samples * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) {
      if (i % 4 != 3) {
        // Dirichlet(1,1,1,1) weights; a random power sharpens some draws
        // towards the pure corners.
        BellWeights w{};
        const double sharpen = 1.0 + 6.0 * unit(rng);
        double total = 0.0;
        for (auto& x : w) {
          x = std::pow(expo(rng), sharpen);
          total += x;
        }
        for (auto& x : w) x /= total;
        const auto pt = bell_plane_point(bell_diagonal_state(w));
        merge(best[detail::frontier_bin(pt.m, n_points)], Best{pt.value, w, true});
      } else {
        const double cval = unit(rng);
        const double eps = 0.2 * unit(rng);
        const auto psi = random_pure_vector(rng);
        ComplexMatrix rho = (1.0 - eps) * mems_state(cval);
        rho += eps * ComplexMatrix::outer(psi, psi);
        const auto pt = bell_plane_point(rho);
        merge(best[detail::frontier_bin(pt.m, n_points)], Best{pt.value, {}, false});
      }
    }
  });

  std::vector<Best> best(n_points);
  for (const auto& chunk : per_chunk)
    for (std::size_t b = 0; b < n_points; ++b) merge(best[b], chunk[b]);

  // Grid seeds: Werner and MEMS states at each M_i.
  for (std::size_t i = 0; i < n_points; ++i) {
    const double m = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double p = std::sqrt(std::max(0.0, 1.0 - m));
    const auto w = werner_weights(p);
    const auto pt = bell_plane_point(bell_diagonal_state(w));
    merge(best[detail::frontier_bin(pt.m, n_points)], Best{pt.value, w, true});
    if (m <= 8.0 / 9.0) {
      const auto mp = bell_plane_point(mems_state(mems_concurrence_at(m)));
      merge(best[detail::frontier_bin(mp.m, n_points)], Best{mp.value, {}, false});
    }
  }

  // Best Bell-diagonal start with M >= M_i, for the local search.
  std::vector<Best> start(n_points);
  {
    Best running;
    for (std::size_t i = n_points; i-- > 0;) {
      if (best[i].has_weights) merge(running, best[i]);
      start[i] = running;
      const double m = static_cast<double>(i) / static_cast<double>(n_points - 1);
      const auto w = werner_weights(std::sqrt(std::max(0.0, 1.0 - m)));
      const auto pt = bell_plane_point(bell_diagonal_state(w));
      if (pt.m >= m - 1e-12) merge(start[i], Best{pt.value, w, true});
    }
  }

  std::vector<double> refined(n_points, -1.0);
  parallel_for(n_points, [&](std::size_t i) {
    const double m_floor = static_cast<double>(i) / static_cast<double>(n_points - 1) - 1e-12;
    auto seq = detail::make_seed(seed, 2, i);
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    BellWeights w = start[i].weights;
    double value = start[i].value;
    const std::size_t iters = opts.local_iterations;
    for (std::size_t it = 0; it < iters; ++it) {
      const double sigma = 0.05 * std::pow(1e-4, static_cast<double>(it) / static_cast<double>(std::max<std::size_t>(1, iters)));
      BellWeights trial = w;
      double total = 0.0;
      for (auto& x : trial) {
        x = std::max(0.0, x + sigma * normal(rng));
        total += x;
      }
      if (total <= 0.0) continue;
      for (auto& x : trial) x /= total;
      const auto pt = bell_plane_point(bell_diagonal_state(trial));
      if (pt.m >= m_floor && pt.value > value) {
        w = trial;
        value = pt.value;
      }
    }
    refined[i] = value;
  });

  FrontierCurve curve{FrontierKind::kBellFrontier, std::vector<PlanePoint>(n_points)};
  double running = 0.0;
  for (std::size_t i = n_points; i-- > 0;) {
    running = std::max({running, best[i].value, refined[i]});
    curve.points[i] = {static_cast<double>(i) / static_cast<double>(n_points - 1), std::min(running, kTsirelson)};
  }
  return curve;
}

// --- Coverage ----------------------------------------------------------------

struct CoverageReport {
  double epsilon = 0.0;
  double min_distance = 0.0;     // trajectory to the curve polyline
  double fraction_covered = 0.0; // arc length within epsilon of a trajectory point
};

namespace detail {

inline double point_segment_distance(PlanePoint q, PlanePoint a, PlanePoint b) {
  const double dx = b.m - a.m;
  const double dy = b.value - a.value;
  const double len2 = dx * dx + dy * dy;
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(((q.m - a.m) * dx + (q.value - a.value) * dy) / len2, 0.0, 1.0);
  return std::hypot(a.m + s * dx - q.m, a.value + s * dy - q.value);
}

}  // namespace detail

/// Distance and epsilon-coverage of a curve by a set of plane points, with
/// Euclidean distance on unnormalised axes.
inline CoverageReport coverage(std::span<const PlanePoint> trajectory, const FrontierCurve& curve,
                               double epsilon) {
  if (trajectory.empty() || curve.points.empty()) throw ValidationError("coverage: empty input");
  if (!(epsilon > 0.0)) throw ValidationError("coverage: epsilon must be > 0");

  std::vector<PlanePoint> pts(trajectory.begin(), trajectory.end());
  std::sort(pts.begin(), pts.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.m < b.m; });
  auto window = [&](double lo, double hi) {
    const auto first = std::lower_bound(pts.begin(), pts.end(), lo,
                                        [](const PlanePoint& p, double x) { return p.m < x; });
    const auto last = std::upper_bound(first, pts.end(), hi,
                                       [](double x, const PlanePoint& p) { return x < p.m; });
    return std::span<const PlanePoint>(pts.data() + (first - pts.begin()), static_cast<std::size_t>(last - first));
  };

  const auto& cp = curve.points;
  CoverageReport rep;
  rep.epsilon = epsilon;

  double best = std::hypot(pts.front().m - cp.front().m, pts.front().value - cp.front().value);
  if (cp.size() == 1) {
    for (const auto& q : pts) best = std::min(best, std::hypot(q.m - cp[0].m, q.value - cp[0].value));
    rep.min_distance = best;
    rep.fraction_covered = best <= epsilon ? 1.0 : 0.0;
    return rep;
  }

  double total = 0.0;
  double covered = 0.0;
  std::vector<std::pair<double, double>> intervals;
  for (std::size_t k = 0; k + 1 < cp.size(); ++k) {
    const PlanePoint a = cp[k];
    const PlanePoint b = cp[k + 1];
    const double lo_m = std::min(a.m, b.m);
    const double hi_m = std::max(a.m, b.m);

    for (const auto& q : window(lo_m - best, hi_m + best)) {
      best = std::min(best, detail::point_segment_distance(q, a, b));
    }

    const double dx = b.m - a.m;
    const double dy = b.value - a.value;
    const double len2 = dx * dx + dy * dy;
    const double len = std::sqrt(len2);
    total += len;
    if (len2 == 0.0) continue;
    intervals.clear();
    for (const auto& q : window(lo_m - epsilon, hi_m + epsilon)) {
      // |a + s d - q|^2 <= eps^2  <=>  len2 s^2 - 2 s (d.(q-a)) + |q-a|^2 - eps^2 <= 0
      const double ux = q.m - a.m;
      const double uy = q.value - a.value;
      const double proj = ux * dx + uy * dy;
      const double disc = proj * proj - len2 * (ux * ux + uy * uy - epsilon * epsilon);
      if (disc < 0.0) continue;
      const double root = std::sqrt(disc);
      const double s1 = std::max(0.0, (proj - root) / len2);
      const double s2 = std::min(1.0, (proj + root) / len2);
      if (s1 < s2) intervals.emplace_back(s1, s2);
      else if (s1 == s2) intervals.emplace_back(s1, s1);
    }
    std::sort(intervals.begin(), intervals.end());
    double seg_cov = 0.0;
    double cur_lo = -1.0;
    double cur_hi = -1.0;
    for (const auto& [s1, s2] : intervals) {
      if (s1 > cur_hi) {
        if (cur_hi >= 0.0) seg_cov += cur_hi - cur_lo;
        cur_lo = s1;
        cur_hi = s2;
      } else {
        cur_hi = std::max(cur_hi, s2);
      }
    }
    if (cur_hi >= 0.0) seg_cov += cur_hi - cur_lo;
    covered += seg_cov * len;
  }
  rep.min_distance = best;
  rep.fraction_covered = total > 0.0 ? std::clamp(covered / total, 0.0, 1.0) : 0.0;
  return rep;
}

// --- Rationality of Delta / Omega ----------------------------------------------

enum class Rationality { kEffectivelyRational, kEffectivelyIrrational };

inline const char* to_string(Rationality r) {
  return r == Rationality::kEffectivelyRational ? "EFFECTIVELY_RATIONAL" : "EFFECTIVELY_IRRATIONAL";
}

struct Fraction {
  long long p = 0;
  long long q = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct RationalityReport {
  double ratio = 0.0;
  std::vector<Fraction> convergents;  // increasing q, lowest terms
  Fraction best;                      // smallest q with |ratio - p/q| < tol
  Rationality classification = Rationality::kEffectivelyIrrational;
  double tol = 0.0;
  long long q_max = 0;
};

/// Continued-fraction convergents of x, stopping once a convergent matches
/// x to within a few ulps or the denominator would exceed `q_limit`.
inline std::vector<Fraction> continued_fraction_convergents(double x, long long q_limit = 1'000'000'000'000LL) {
  if (!std::isfinite(x)) throw ValidationError("continued_fraction_convergents: non-finite input");
  const long double ax = std::abs(static_cast<long double>(x));
  const long long sign = x < 0 ? -1 : 1;
  std::vector<Fraction> out;
  long double y = ax;
  long long p_prev = 1, q_prev = 0;   // h_{-1}, k_{-1}
  long long p_prev2 = 0, q_prev2 = 1; // h_{-2}, k_{-2}
  for (int term = 0; term < 64; ++term) {
    const long double fl = std::floor(y);
    if (fl > 9.0e15L) break;
    const auto a = static_cast<long long>(fl);
    const long double pn = static_cast<long double>(a) * p_prev + p_prev2;
    const long double qn = static_cast<long double>(a) * q_prev + q_prev2;
    if (qn > static_cast<long double>(q_limit) || pn > 9.0e18L) break;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = static_cast<long long>(pn);
    q_prev = static_cast<long long>(qn);
    // a_1 = 1 repeats q = 1; keep the later (closer) fraction.
    if (!out.empty() && out.back().q == q_prev) out.pop_back();
    out.push_back({sign * p_prev, q_prev});
    const long double err = std::abs(ax - static_cast<long double>(p_prev) / static_cast<long double>(q_prev));
    const long double frac = y - fl;
    if (err <= 4.0L * std::numeric_limits<double>::epsilon() * std::max<long double>(ax, 1e-300L) ||
        frac <= 0.0L) {
      break;
    }
    y = 1.0L / frac;
  }
  return out;
}

/// Fraction with the smallest denominator strictly inside (lo, hi), 0 <= lo < hi.
inline Fraction simplest_fraction_between(long double lo, long double hi) {
  // Walk down the Stern-Brocot tree using continued-fraction steps.
  // Maintains the Moebius map x -> (a x + b) / (c x + d) from the reduced
  // interval back to the original one.
  long long a = 1, b = 0, c = 0, d = 1;
  for (int depth = 0; depth < 200; ++depth) {
    const long double fl = std::floor(lo);
    if (fl + 1.0L < hi || (fl == lo && fl + 1.0L < hi)) {
      const auto n = static_cast<long long>(fl) + 1;
      return {a * n + b, c * n + d};
    }
    // lo, hi in [fl, fl + 1]; recurse on (1/(hi - fl), 1/(lo - fl)).
    const auto f = static_cast<long long>(fl);
    // x = f + 1/y
    const long long na = a * f + b, nb = a;
    const long long nc = c * f + d, nd = c;
    a = na;
    b = nb;
    c = nc;
    d = nd;
    const long double new_lo = 1.0L / (hi - fl);
    const long double new_hi = lo - fl > 0.0L ? 1.0L / (lo - fl) : std::numeric_limits<long double>::infinity();
    lo = new_lo;
    hi = new_hi;
  }
  throw std::runtime_error("simplest_fraction_between: no convergence");
}

inline RationalityReport classify_ratio(const SystemParams& p, double tol, long long q_max) {
  p.validate();
  if (!(tol > 0.0)) throw ValidationError("classify_ratio: tol must be > 0");
  if (q_max < 2) throw ValidationError("classify_ratio: q_max must be >= 2");
  RationalityReport rep;
  rep.ratio = p.delta / p.omega();
  rep.tol = tol;
  rep.q_max = q_max;
  rep.convergents = continued_fraction_convergents(rep.ratio);

  const long double ax = std::abs(static_cast<long double>(rep.ratio));
  Fraction f;
  if (ax < tol) {
    f = {0, 1};
  } else {
    f = simplest_fraction_between(ax - tol, ax + tol);
  }
  if (rep.ratio < 0) f.p = -f.p;
  rep.best = f;
  rep.classification = f.q <= q_max ? Rationality::kEffectivelyRational : Rationality::kEffectivelyIrrational;
  return rep;
}

}  // namespace cavmems
