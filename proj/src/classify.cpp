#include "pbc/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pbc/numeric.hpp"

namespace pbc {

Breakpoints breakpoints(double s1, double s2) {
  if (!(s1 >= 0.0) || !(s2 >= 0.0)) throw std::invalid_argument("dark currents must be nonnegative");
  if (s1 > s2) throw std::invalid_argument("breakpoints require s1 <= s2");
  Breakpoints b;
  if (s1 == s2) return b;
  b.alpha4 = s1 / s2;
  b.alpha1 = (1.0 + s1) / (1.0 + s2);
  b.alpha3 = g1(0.0, s1, s2);
  b.alpha2 = g2(1.0, s1, s2);
  b.alpha12 = g1(optimal_input(s2), s1, s2);
  b.alpha23 = g2(optimal_input(s1), s1, s2);
  return b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::degraded: return "degraded";
    case Verdict::less_noisy: return "less-noisy";
    case Verdict::more_capable: return "more-capable";
    case Verdict::effectively_less_noisy: return "effectively-less-noisy";
    case Verdict::stronger_condition_optimal: return "stronger-condition-optimal";
    case Verdict::unresolved: return "unresolved";
  }
  return "unknown";
}

namespace {

Interval locate(double alpha, const Breakpoints& b) {
  const std::array<std::pair<const char*, double>, 8> marks{{{"0", 0.0},
                                                             {"alpha4", b.alpha4},
                                                             {"alpha3", b.alpha3},
                                                             {"alpha23", b.alpha23},
                                                             {"alpha2", b.alpha2},
                                                             {"alpha12", b.alpha12},
                                                             {"alpha1", b.alpha1},
                                                             {"1", 1.0}}};
  for (std::size_t i = 0; i + 1 < marks.size(); ++i)
    if (alpha < marks[i + 1].second) return {marks[i].first, marks[i + 1].first, marks[i].second, marks[i + 1].second};
  return {"1", "inf", 1.0, INFINITY};
}

}  // namespace

ChannelClass classify(const PbcParams& p) {
  p.validate();
  if (!p.is_canonical()) return classify(PbcParams::canonical(p.alpha, p.s1, p.s2, p.scale));
  const Breakpoints b = breakpoints(p.s1, p.s2);
  const double a = p.alpha;

  Membership c1, c2;
  c1.degraded = a >= 1.0;
  c1.less_noisy = a >= b.alpha1 || c1.degraded;
  c1.more_capable = a >= b.alpha2 || c1.less_noisy;
  c1.effectively_less_noisy = a >= b.alpha12 || c1.less_noisy;
  c2.degraded = a == 0.0 || (p.s1 == p.s2 && a <= 1.0);
  c2.less_noisy = a <= b.alpha4 || c2.degraded;
  c2.more_capable = a <= b.alpha3 || c2.less_noisy;
  c2.effectively_less_noisy = a <= b.alpha23 || c2.less_noisy;

  ChannelClass c;
  c.witness = locate(a, b);
  auto set = [&](Verdict v, Receiver r) {
    c.verdict = v;
    c.stronger = p.original(r);
  };
  if (c1.degraded)
    set(Verdict::degraded, Receiver::first);
  else if (c1.less_noisy)
    set(Verdict::less_noisy, Receiver::first);
  else if (c2.degraded)
    set(Verdict::degraded, Receiver::second);
  else if (c2.less_noisy)
    set(Verdict::less_noisy, Receiver::second);
  else if (c1.more_capable)
    set(Verdict::more_capable, Receiver::first);
  else if (c2.more_capable)
    set(Verdict::more_capable, Receiver::second);
  else if (c2.effectively_less_noisy)
    set(Verdict::effectively_less_noisy, Receiver::second);
  else
    c.verdict = Verdict::unresolved;

  c.first = p.swapped ? c2 : c1;
  c.second = p.swapped ? c1 : c2;
  return c;
}

EffectivelyLessNoisy effectively_less_noisy_check(const PbcParams& p) {
  p.validate();
  if (!p.is_canonical()) throw std::invalid_argument("effectively_less_noisy_check expects canonical parameters");
  const Breakpoints b = breakpoints(p.s1, p.s2);
  EffectivelyLessNoisy r;
  r.first = p.alpha >= b.alpha12;
  r.second = p.alpha <= b.alpha23;

  const double tol = 1e-12 * p.scale;
  const double q1 = optimal_input(p.s1), q2 = optimal_input(p.s2);
  auto equal_on = [&](Orientation o, double lo, double hi) {
    const PiecewiseEnvelope env = analytic_envelope(o, p);
    for (double q : numeric::linspace(lo, hi, 513))
      if (env(q) - env.raw(q) > tol) return false;
    return true;
  };
  r.first_by_envelope = equal_on(Orientation::first_minus_second, 0.0, q2);
  r.second_by_envelope = equal_on(Orientation::second_minus_first, q1, 1.0);
  return r;
}

StrongerConditionOrientation stronger_condition_orientation(const PbcParams& p, Receiver stronger,
                                                            int lambda_grid_size, unsigned threads) {
  p.validate();
  if (!p.is_canonical()) throw std::invalid_argument("stronger_condition_check expects canonical parameters");
  if (lambda_grid_size < 2) throw std::invalid_argument("lambda grid needs at least two points");
  const Receiver weaker = other(stronger);
  const Orientation o =
      stronger == Receiver::first ? Orientation::first_minus_second : Orientation::second_minus_first;
  const std::vector<double> lambdas = numeric::linspace(0.0, 1.0, std::size_t(lambda_grid_size));
  std::vector<double> margin(lambdas.size());
  std::vector<char> flat(lambdas.size(), 0);

  numeric::parallel_for(lambdas.size(), threads, [&](std::size_t i) {
    const PiecewiseEnvelope env(p, o, lambdas[i]);
    auto phi = [&](double x) { return mutual_info_rate(weaker, x, p) + env(x); };
    const auto best = numeric::golden_max(phi, 0.0, 1.0, 1e-10);
    auto d = [&](double x) { return mutual_info_rate(stronger, x, p) - mutual_info_rate(weaker, x, p); };
    double m = d(best.x);
    for (const Support& s : env.decompose(best.x)) m -= s.weight * d(s.point);
    margin[i] = m;

    const double h = 1e-4, ftol = 1e-14 * std::max(1.0, std::abs(best.f));
    bool left_flat = best.x - h >= 0.0 && best.f - phi(best.x - h) <= ftol;
    bool right_flat = best.x + h <= 1.0 && best.f - phi(best.x + h) <= ftol;
    flat[i] = left_flat || right_flat;
  });

  StrongerConditionOrientation r;
  r.holds = true;
  r.worst_margin = INFINITY;
  const double tol = 1e-10 * p.scale;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (margin[i] < r.worst_margin) {
      r.worst_margin = margin[i];
      r.worst_lambda = lambdas[i];
    }
    if (margin[i] < -tol) r.holds = false;
    r.flat_maximizers += flat[i];
  }
  return r;
}

StrongerCondition stronger_condition_check(const PbcParams& p, int lambda_grid_size, unsigned threads) {
  StrongerCondition r;
  r.first = stronger_condition_orientation(p, Receiver::first, lambda_grid_size, threads);
  r.second = stronger_condition_orientation(p, Receiver::second, lambda_grid_size, threads);
  if (r.first.holds)
    r.receiver = Receiver::first;
  else if (r.second.holds)
    r.receiver = Receiver::second;
  r.holds = r.receiver.has_value();
  r.inconclusive = !r.holds && (r.first.flat_maximizers > 0 || r.second.flat_maximizers > 0);
  return r;
}

ChannelClass classify_resolved(const PbcParams& p, int lambda_grid_size, unsigned threads) {
  ChannelClass c = classify(p);
  if (c.verdict != Verdict::unresolved) return c;
  const PbcParams cp = p.is_canonical() ? p : PbcParams::canonical(p.alpha, p.s1, p.s2, p.scale);
  const StrongerCondition s = stronger_condition_check(cp, lambda_grid_size, threads);
  if (s.holds) {
    c.verdict = Verdict::stronger_condition_optimal;
    c.stronger = cp.original(*s.receiver);
  }
  c.inconclusive = s.inconclusive;
  return c;
}

AvgPowerThresholds classify_avg_power(const PbcParams& p, double sigma) {
  p.validate();
  if (!(sigma > 0.0) || sigma > 1.0) throw std::invalid_argument("sigma must lie in (0,1]");
  if (!p.is_canonical()) throw std::invalid_argument("classify_avg_power expects canonical parameters");
  AvgPowerThresholds t;
  t.sigma = sigma;
  t.first_threshold = g1(std::min(sigma, optimal_input(p.s2)), p.s1, p.s2);
  t.second_threshold = g2(std::min(sigma, optimal_input(p.s1)), p.s1, p.s2);
  t.first = p.alpha >= t.first_threshold;
  t.second = p.alpha <= t.second_threshold;
  return t;
}

}  // namespace pbc
