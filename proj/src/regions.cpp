#include "pbc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pbc/numeric.hpp"

namespace pbc {

namespace {

Orientation orientation_of(Receiver stronger) {
  return stronger == Receiver::first ? Orientation::first_minus_second : Orientation::second_minus_first;
}

RatePoint canonical_point(Receiver stronger, double rs, double rw) {
  return stronger == Receiver::first ? RatePoint{rs, rw} : RatePoint{rw, rs};
}

void require_canonical(const PbcParams& p) {
  p.validate();
  if (!p.is_canonical()) throw std::invalid_argument("expected canonical parameters (s1 <= s2)");
}

}  // namespace

WeightedSumRate weighted_sum_rate(double lambda, const PbcParams& p, Receiver stronger) {
  require_canonical(p);
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (lambda > 1.0) {
    WeightedSumRate at_one = weighted_sum_rate(1.0, p, stronger);
    at_one.lambda = lambda;
    at_one.value *= lambda;
    at_one.decomposition = {{1.0, at_one.p_star}};
    at_one.point = canonical_point(stronger, at_one.value / lambda, 0.0);
    return at_one;
  }
  const Receiver weaker = other(stronger);
  const PiecewiseEnvelope env(p, orientation_of(stronger), lambda);
  auto phi = [&](double x) { return mutual_info_rate(weaker, x, p) + env(x); };
  const auto best = numeric::golden_max(phi, 0.0, 1.0, 1e-10);

  WeightedSumRate r;
  r.lambda = lambda;
  r.value = best.f;
  r.p_star = best.x;
  r.decomposition = env.decompose(best.x);
  double rs = 0.0, rw = mutual_info_rate(weaker, best.x, p);
  for (const Support& s : r.decomposition) {
    rs += s.weight * mutual_info_rate(stronger, s.point, p);
    rw -= s.weight * mutual_info_rate(weaker, s.point, p);
  }
  r.point = canonical_point(stronger, rs, rw);
  return r;
}

WeightedSumRate superposition_hyperplane(double lambda, const PbcParams& p, Receiver stronger) {
  require_canonical(p);
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  const Receiver weaker = other(stronger);
  auto is = [&](double x) { return mutual_info_rate(stronger, x, p); };
  auto iw = [&](double x) { return mutual_info_rate(weaker, x, p); };

  if (lambda > 1.0) {
    const double q = optimal_input(stronger, p);
    WeightedSumRate r;
    r.lambda = lambda;
    r.p_star = q;
    r.value = lambda * is(q);
    r.decomposition = {{1.0, q}};
    r.point = canonical_point(stronger, is(q), 0.0);
    return r;
  }

  // For fixed p, the inner maximization over p(u|x) of
  //   lambda min{A, I_s(p) - B} + B,   A = I(X;Y_s|U), B = I(U;Y_w)
  // equals min over mu in [0,1] of c I_w + (1-mu) lambda I_s + c C[lambda' I_s - I_w],
  // with c = 1 - lambda (1 - mu) and lambda' = mu lambda / c.
  auto h = [&](double x, double mu) {
    const double c = 1.0 - lambda * (1.0 - mu);
    double v = (1.0 - mu) * lambda * is(x);
    if (c > 1e-15) {
      const PiecewiseEnvelope env(p, orientation_of(stronger), std::min(1.0, mu * lambda / c));
      v += c * (iw(x) + env(x));
    }
    return v;
  };
  auto inner = [&](double x) {
    const auto m = numeric::golden_min([&](double mu) { return h(x, mu); }, 0.0, 1.0, 1e-9);
    return std::min(is(x), m.f);
  };
  const auto best = numeric::golden_max(inner, 0.0, 1.0, 1e-9);
  const double x = best.x;
  const double mu_star = numeric::golden_min([&](double mu) { return h(x, mu); }, 0.0, 1.0, 1e-12).x;

  struct Candidate {
    double a, b;
    Decomposition d;
  };
  auto candidate = [&](double mu) {
    const double c = 1.0 - lambda * (1.0 - mu);
    const double lp = c > 1e-15 ? std::min(1.0, mu * lambda / c) : 1.0;
    const PiecewiseEnvelope env(p, orientation_of(stronger), lp);
    Candidate k{0.0, iw(x), env.decompose(x)};
    for (const Support& s : k.d) {
      k.a += s.weight * is(s.point);
      k.b -= s.weight * iw(s.point);
    }
    return k;
  };
  const double isx = is(x);
  auto rates = [&](double a, double b) {
    return std::pair{std::max(0.0, std::min(a, isx - b)), std::min(b, isx)};
  };

  WeightedSumRate r;
  r.lambda = lambda;
  r.p_star = x;
  double best_value = -INFINITY;
  auto consider = [&](double a, double b, Decomposition d) {
    auto [rs, rw] = rates(a, b);
    const double v = lambda * rs + rw;
    if (v > best_value) {
      best_value = v;
      r.point = canonical_point(stronger, rs, rw);
      r.decomposition = std::move(d);
    }
  };
  const Candidate mid = candidate(mu_star);
  consider(mid.a, mid.b, mid.d);
  for (double delta : {1e-6, 1e-4}) {
    const Candidate lo = candidate(std::max(0.0, mu_star - delta));
    const Candidate hi = candidate(std::min(1.0, mu_star + delta));
    const double slo = lo.a + lo.b, shi = hi.a + hi.b;
    double theta = std::abs(shi - slo) > 1e-300 ? (isx - slo) / (shi - slo) : 0.0;
    theta = std::clamp(theta, 0.0, 1.0);
    Decomposition mix;
    for (const Support& s : lo.d) mix.push_back({(1.0 - theta) * s.weight, s.point});
    for (const Support& s : hi.d) mix.push_back({theta * s.weight, s.point});
    std::erase_if(mix, [](const Support& s) { return s.weight <= 0.0; });
    consider((1.0 - theta) * lo.a + theta * hi.a, (1.0 - theta) * lo.b + theta * hi.b, std::move(mix));
  }
  r.value = best.f;
  return r;
}

std::vector<double> default_lambdas() {
  std::vector<double> l{0.0, 1.0};
  const double lo = std::log(1e-3), hi = std::log(16.0);
  for (int i = 0; i < 63; ++i) l.push_back(std::exp(lo + (hi - lo) * i / 62.0));
  std::sort(l.begin(), l.end());
  return l;
}

namespace {

enum class Form { outer, superposition };

struct Tracer {
  PbcParams cp;  // canonical
  bool swapped;
  Receiver stronger;  // canonical label
  Form form;

  // Boundary point maximizing lambda r1 + r2 in the caller's labels.
  RatePoint operator()(double lambda) const {
    const double w1 = swapped ? 1.0 : lambda, w2 = swapped ? lambda : 1.0;
    const double ws = stronger == Receiver::first ? w1 : w2;
    const double ww = stronger == Receiver::first ? w2 : w1;
    const double ratio = ww > 0.0 ? ws / ww : INFINITY;
    const double slope = std::isfinite(ratio) ? ratio : 2.0;
    const WeightedSumRate w = form == Form::outer ? weighted_sum_rate(slope, cp, stronger)
                                                  : superposition_hyperplane(slope, cp, stronger);
    return swapped ? RatePoint{w.point.r2, w.point.r1} : w.point;
  }
};

RegionBoundary trace(const Tracer& tracer, ChannelClass regime, std::size_t n_points, unsigned threads) {
  if (n_points < 2) throw std::invalid_argument("n_points must be at least 2");
  std::map<double, RatePoint> samples;
  auto evaluate = [&](const std::vector<double>& ls) {
    std::vector<RatePoint> pts(ls.size());
    numeric::parallel_for(ls.size(), threads, [&](std::size_t i) { pts[i] = tracer(ls[i]); });
    for (std::size_t i = 0; i < ls.size(); ++i) samples.emplace(ls[i], pts[i]);
  };
  evaluate(default_lambdas());

  auto distinct = [&] {
    std::vector<std::pair<double, RatePoint>> out;
    for (const auto& [l, pt] : samples) {
      bool dup = false;
      for (const auto& [l2, q] : out)
        if (std::abs(q.r1 - pt.r1) < 1e-9 && std::abs(q.r2 - pt.r2) < 1e-9) dup = true;
      if (!dup) out.emplace_back(l, pt);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second.r1 < b.second.r1; });
    return out;
  };

  // Bisect the slope interval with the widest gap between neighbouring points.
  for (int round = 0; round < 64; ++round) {
    auto cur = distinct();
    if (cur.size() >= n_points) break;
    std::vector<double> fresh;
    std::vector<std::pair<double, std::size_t>> gaps;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      gaps.emplace_back(std::hypot(cur[i + 1].second.r1 - cur[i].second.r1, cur[i + 1].second.r2 - cur[i].second.r2),
                        i);
    std::sort(gaps.rbegin(), gaps.rend());
    for (std::size_t g = 0; g < gaps.size() && fresh.size() < n_points - cur.size(); ++g) {
      const double la = cur[gaps[g].second].first, lb = cur[gaps[g].second + 1].first;
      const double lo = std::min(la, lb), hi = std::max(la, lb);
      if (hi - lo < 1e-12) continue;
      fresh.push_back(lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi);
    }
    if (fresh.empty()) break;
    evaluate(fresh);
  }

  auto cur = distinct();
  if (cur.size() > n_points) {
    std::vector<std::pair<double, RatePoint>> kept;
    for (std::size_t i = 0; i < n_points; ++i)
      kept.push_back(cur[std::size_t(std::llround(double(i) * double(cur.size() - 1) / double(n_points - 1)))]);
    cur = std::move(kept);
  }
  RegionBoundary b;
  b.regime = std::move(regime);
  std::vector<std::pair<double, RatePoint>> pareto;
  for (const auto& e : cur) {
    bool dominated = false;
    for (const auto& f : cur)
      if (f.second.r1 >= e.second.r1 - 1e-12 && f.second.r2 >= e.second.r2 - 1e-12 &&
          (f.second.r1 > e.second.r1 + 1e-12 || f.second.r2 > e.second.r2 + 1e-12))
        dominated = true;
    if (!dominated) pareto.push_back(e);
  }
  for (const auto& [l, pt] : pareto) {
    b.points.push_back(pt);
    b.lambdas.push_back(l);
  }
  return b;
}

Tracer make_tracer(const PbcParams& p, Receiver caller_stronger, Form form) {
  const PbcParams cp = p.is_canonical() ? p : PbcParams::canonical(p.alpha, p.s1, p.s2, p.scale);
  return Tracer{cp, cp.swapped, cp.original(caller_stronger), form};
}

}  // namespace

RegionBoundary region_less_noisy(const PbcParams& p, std::size_t n_points, unsigned threads) {
  const ChannelClass c = classify(p);
  std::optional<Receiver> s;
  for (Receiver r : {Receiver::first, Receiver::second})
    if (!s && (c.of(r).less_noisy || c.of(r).effectively_less_noisy)) s = r;
  if (!s) throw RegimeError("region_less_noisy: no receiver is less noisy or effectively less noisy");
  RegionBoundary b = trace(make_tracer(p, *s, Form::outer), c, n_points, threads);
  b.stronger = *s;
  return b;
}

RegionBoundary region_more_capable(const PbcParams& p, std::size_t n_points, unsigned threads) {
  const ChannelClass c = classify(p);
  std::optional<Receiver> s;
  for (Receiver r : {Receiver::first, Receiver::second})
    if (!s && c.of(r).more_capable) s = r;
  if (!s) throw RegimeError("region_more_capable: no receiver is more capable");
  RegionBoundary b = trace(make_tracer(p, *s, Form::superposition), c, n_points, threads);
  b.stronger = *s;
  return b;
}

double support_value(const RegionBoundary& b, double lambda) {
  double best = -INFINITY;
  for (const RatePoint& pt : b.points) best = std::max(best, lambda * pt.r1 + pt.r2);
  return best;
}

}  // namespace pbc
