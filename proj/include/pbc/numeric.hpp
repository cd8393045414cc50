#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pbc::numeric {

inline constexpr double golden_ratio_conj = 0.6180339887498949;

struct Extremum {
  double x;
  double f;
};

// Maximize a unimodal function on [lo, hi].
template <class F>
Extremum golden_max(F&& f, double lo, double hi, double tol = 1e-10) {
  double a = lo, b = hi;
  double c = b - golden_ratio_conj * (b - a);
  double d = a + golden_ratio_conj * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - golden_ratio_conj * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + golden_ratio_conj * (b - a);
      fd = f(d);
    }
  }
  Extremum best{lo, f(lo)};
  for (double x : {hi, c, d, 0.5 * (a + b)}) {
    double fx = f(x);
    if (fx > best.f) best = {x, fx};
  }
  return best;
}

template <class F>
Extremum golden_min(F&& f, double lo, double hi, double tol = 1e-10) {
  auto r = golden_max([&](double x) { return -f(x); }, lo, hi, tol);
  return {r.x, -r.f};
}

// Scan a grid first, then refine around the best sample. Safer than a
// bare golden search when unimodality is only approximate.
template <class F>
Extremum grid_golden_max(F&& f, double lo, double hi, int n, double tol = 1e-10) {
  int best = 0;
  double fbest = -INFINITY;
  for (int i = 0; i <= n; ++i) {
    double v = f(lo + (hi - lo) * i / n);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / n;
  double b = lo + (hi - lo) * std::min(best + 1, n) / n;
  auto r = golden_max(f, a, b, tol);
  if (r.f < fbest) return {lo + (hi - lo) * best / n, fbest};
  return r;
}

// Solve f(x) = target for nondecreasing f on [lo, hi]; clamps out-of-range targets.
template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi, double tol = 1e-12) {
  if (f(lo) >= target) return lo;
  if (f(hi) <= target) return hi;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct SimplexResult {
  std::vector<double> x;
  double f;
  int evaluations;
};

struct SimplexOptions {
  double step = 0.1;
  double xtol = 1e-10;
  double ftol = 1e-14;
  int max_evaluations = 4000;
};

// Nelder-Mead maximization.
SimplexResult nelder_mead_max(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> x0, const SimplexOptions& opts = {});

// Indices of the upper convex hull of (x_i, y_i); x must be strictly increasing.
// Points on a hull edge are dropped, so consecutive indices are true vertices.
std::vector<std::size_t> upper_hull(std::span<const double> x, std::span<const double> y);

// splitmix64 step, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

unsigned default_threads();

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write results into per-index slots.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace pbc::numeric
