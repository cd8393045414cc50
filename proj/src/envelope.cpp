#include "pbc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "pbc/numeric.hpp"

namespace pbc {

double decomposition_mean(const Decomposition& d) {
  double m = 0.0;
  for (const auto& s : d) m += s.weight * s.point;
  return m;
}

namespace {

// (1+s) ln((1+s)/(x+s)) - 1 + x
double g1_term(double x, double s) {
  const double u = (1.0 - x) / (1.0 + s);
  if (u < 1e-4) return (1.0 + s) * u * u * (0.5 + u * (1.0 / 3.0 + u * (0.25 + u * 0.2)));
  return (1.0 + s) * (-std::log1p(-u) - u);
}

// s ln(1 + x/s) - x
double g2_term(double x, double s) {
  if (s == 0.0) return -x;
  const double v = x / s;
  if (v < 1e-4) return s * v * v * (-0.5 + v * (1.0 / 3.0 + v * (-0.25 + v * 0.2)));
  return s * (std::log1p(v) - v);
}

}  // namespace

double g1(double x, double s1, double s2) {
  if (s1 == s2) return 1.0;
  if (x >= 1.0) return (1.0 + s1) / (1.0 + s2);
  if (s1 == 0.0 && x <= 0.0) return 0.0;
  return g1_term(x, s2) / g1_term(x, s1);
}

double g2(double x, double s1, double s2) {
  if (s1 == s2) return 1.0;
  if (x <= 0.0) return s1 / s2;
  return g2_term(x, s2) / g2_term(x, s1);
}

double invert_g(GFunction which, double target, double s1, double s2) {
  auto g = [&](double x) { return which == GFunction::g1 ? g1(x, s1, s2) : g2(x, s1, s2); };
  const double lo = g(0.0), hi = g(1.0);
  if (target <= lo) return 0.0;
  if (target >= hi) return 1.0;
  return numeric::bisect_increasing(g, target, 0.0, 1.0, 1e-12);
}

PiecewiseEnvelope::PiecewiseEnvelope(const PbcParams& p, Orientation o, double lambda)
    : params_(p), shifted_(p), orientation_(o), lambda_(lambda) {
  p.validate();
  if (p.s1 > p.s2) throw std::invalid_argument("envelope requires canonical parameters (s1 <= s2)");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  const double s1 = p.s1, s2 = p.s2;
  if (o == Orientation::first_minus_second) {
    alpha_eff_ = lambda * p.alpha;
    shifted_.alpha = alpha_eff_;
    const double a1 = (1.0 + s1) / (1.0 + s2), a3 = g1(0.0, s1, s2);
    if (alpha_eff_ >= a1)
      breakpoint_ = 1.0;
    else if (alpha_eff_ <= a3)
      breakpoint_ = 0.0;
    else
      breakpoint_ = invert_g(GFunction::g1, alpha_eff_, s1, s2);
  } else if (lambda == 0.0) {
    // C[-I1] vanishes identically: the chord from 0 to 1.
    alpha_eff_ = INFINITY;
    breakpoint_ = 1.0;
  } else {
    alpha_eff_ = p.alpha / lambda;
    shifted_.alpha = alpha_eff_;
    const double a2 = g2(1.0, s1, s2), a4 = s2 > 0.0 ? s1 / s2 : 1.0;
    if (alpha_eff_ >= a2)
      breakpoint_ = 1.0;
    else if (alpha_eff_ <= a4)
      breakpoint_ = 0.0;
    else
      breakpoint_ = invert_g(GFunction::g2, alpha_eff_, s1, s2);
  }
  breakpoint_value_ = raw(breakpoint_);
}

double PiecewiseEnvelope::base_raw(double q) const {
  if (orientation_ == Orientation::first_minus_second)
    return mutual_info_rate(Receiver::first, q, shifted_) - mutual_info_rate(Receiver::second, q, shifted_);
  return mutual_info_rate(Receiver::second, q, shifted_) - mutual_info_rate(Receiver::first, q, shifted_);
}

double PiecewiseEnvelope::raw(double q) const {
  if (orientation_ == Orientation::first_minus_second) return base_raw(q);
  return lambda_ * mutual_info_rate(Receiver::second, q, params_) - mutual_info_rate(Receiver::first, q, params_);
}

bool PiecewiseEnvelope::touches(double q) const {
  if (orientation_ == Orientation::first_minus_second) return q <= breakpoint_ || breakpoint_ >= 1.0;
  return q >= breakpoint_;
}

double PiecewiseEnvelope::operator()(double q) const {
  if (touches(q)) return raw(q);
  if (orientation_ == Orientation::first_minus_second) return (1.0 - q) * breakpoint_value_ / (1.0 - breakpoint_);
  return q * breakpoint_value_ / breakpoint_;
}

Decomposition PiecewiseEnvelope::decompose(double q) const {
  if (touches(q)) return {{1.0, q}};
  const double t = breakpoint_;
  Decomposition d;
  if (orientation_ == Orientation::first_minus_second) {
    d = {{(1.0 - q) / (1.0 - t), t}, {(q - t) / (1.0 - t), 1.0}};
  } else {
    d = {{1.0 - q / t, 0.0}, {q / t, t}};
  }
  std::erase_if(d, [](const Support& s) { return s.weight <= 0.0; });
  return d;
}

PiecewiseEnvelope analytic_envelope(Orientation o, const PbcParams& p) { return PiecewiseEnvelope(p, o, 1.0); }

PiecewiseEnvelope scaled_envelope(double lambda, const PbcParams& p, Orientation o) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0,1]");
  return PiecewiseEnvelope(p, o, lambda);
}

SampledEnvelope::SampledEnvelope(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) throw std::invalid_argument("grid and values differ in length");
  if (grid_.size() < 2) throw std::invalid_argument("need at least two samples");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
  vertices_ = numeric::upper_hull(grid_, values_);
  edge_.resize(grid_.size());
  envelope_.resize(grid_.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    while (k + 2 < vertices_.size() && vertices_[k + 1] <= i) ++k;
    edge_[i] = k;
    const std::size_t a = vertices_[k], b = vertices_[std::min(k + 1, vertices_.size() - 1)];
    if (i == a || i == b || a == b) {
      envelope_[i] = values_[i];
    } else {
      const double w = (grid_[i] - grid_[a]) / (grid_[b] - grid_[a]);
      envelope_[i] = (1.0 - w) * values_[a] + w * values_[b];
    }
  }
}

std::size_t SampledEnvelope::span_at(std::size_t i) const {
  const std::size_t k = edge_[i];
  const std::size_t a = vertices_[k], b = vertices_[std::min(k + 1, vertices_.size() - 1)];
  if (i == a || i == b) return 0;
  return b - a;
}

Decomposition SampledEnvelope::decompose_at(std::size_t i) const {
  const std::size_t k = edge_[i];
  const std::size_t a = vertices_[k], b = vertices_[std::min(k + 1, vertices_.size() - 1)];
  if (i == a || i == b || a == b) return {{1.0, grid_[i]}};
  const double w = (grid_[i] - grid_[a]) / (grid_[b] - grid_[a]);
  return {{1.0 - w, grid_[a]}, {w, grid_[b]}};
}

double SampledEnvelope::operator()(double q) const {
  if (q <= grid_.front()) return envelope_.front();
  if (q >= grid_.back()) return envelope_.back();
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), q,
                             [&](double v, std::size_t idx) { return v < grid_[idx]; });
  const std::size_t b = *it, a = *(it - 1);
  const double w = (q - grid_[a]) / (grid_[b] - grid_[a]);
  return (1.0 - w) * values_[a] + w * values_[b];
}

Decomposition SampledEnvelope::decompose(double q) const {
  q = std::clamp(q, grid_.front(), grid_.back());
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), q,
                             [&](double v, std::size_t idx) { return v < grid_[idx]; });
  if (it == vertices_.end()) return {{1.0, grid_[vertices_.back()]}};
  const std::size_t b = *it, a = *(it - 1);
  const double w = (q - grid_[a]) / (grid_[b] - grid_[a]);
  if (w <= 0.0) return {{1.0, grid_[a]}};
  return {{1.0 - w, grid_[a]}, {w, grid_[b]}};
}

SampledEnvelope hull_envelope(std::vector<double> grid, std::vector<double> values) {
  return SampledEnvelope(std::move(grid), std::move(values));
}

EnvelopeFn as_function(PiecewiseEnvelope env) {
  auto shared = std::make_shared<PiecewiseEnvelope>(std::move(env));
  return {[shared](double q) { return (*shared)(q); }, [shared](double q) { return shared->decompose(q); }};
}

EnvelopeFn as_function(SampledEnvelope env) {
  auto shared = std::make_shared<SampledEnvelope>(std::move(env));
  return {[shared](double q) { return (*shared)(q); }, [shared](double q) { return shared->decompose(q); }};
}

}  // namespace pbc
