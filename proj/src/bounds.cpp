#include "pbc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "pbc/numeric.hpp"
#include "pbc/regions.hpp"

namespace pbc {

MutualInfoFunctional MutualInfoFunctional::from_params(const PbcParams& p) {
  const PbcParams cp = p.is_canonical() ? p : PbcParams::canonical(p.alpha, p.s1, p.s2, p.scale);
  const Receiver r1 = cp.original(Receiver::first), r2 = cp.original(Receiver::second);
  MutualInfoFunctional f;
  f.first = [cp, r1](double q) { return mutual_info_rate(r1, q, cp); };
  f.second = [cp, r2](double q) { return mutual_info_rate(r2, q, cp); };
  f.envelope = [cp](Orientation o) {
    if (cp.swapped)
      o = o == Orientation::first_minus_second ? Orientation::second_minus_first : Orientation::first_minus_second;
    return as_function(PiecewiseEnvelope(cp, o, 1.0));
  };
  return f;
}

MutualInfoFunctional MutualInfoFunctional::from_functions(std::function<double(double)> f1,
                                                          std::function<double(double)> f2, std::size_t grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> grid = numeric::linspace(0.0, 1.0, grid_n);
  std::vector<double> d12(grid_n), d21(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    d12[i] = f1(grid[i]) - f2(grid[i]);
    d21[i] = -d12[i];
  }
  auto e12 = std::make_shared<EnvelopeFn>(as_function(hull_envelope(grid, d12)));
  auto e21 = std::make_shared<EnvelopeFn>(as_function(hull_envelope(grid, d21)));
  MutualInfoFunctional f;
  f.first = std::move(f1);
  f.second = std::move(f2);
  f.envelope = [e12, e21](Orientation o) { return o == Orientation::first_minus_second ? *e12 : *e21; };
  return f;
}

double marton_value(const MutualInfoFunctional& f, const MartonWitness& w) {
  double mean = 0.0, total = 0.0;
  for (int j = 0; j < 5; ++j) {
    if (w.beta[j] < 0.0 || w.p[j] < 0.0 || w.p[j] > 1.0) throw std::invalid_argument("invalid Marton witness");
    mean += w.beta[j] * w.p[j];
    total += w.beta[j];
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("Marton witness weights must sum to 1");
  mean = std::clamp(mean, 0.0, 1.0);
  double iw1 = f.first(mean), iw2 = f.second(mean), priv = 0.0;
  for (int j = 0; j < 5; ++j) {
    if (w.beta[j] == 0.0) continue;
    const double a = f.first(w.p[j]), b = f.second(w.p[j]);
    iw1 -= w.beta[j] * a;
    iw2 -= w.beta[j] * b;
    priv += w.beta[j] * (j < w.k ? a : b);
  }
  return std::min(iw1, iw2) + priv;
}

namespace {

int count_distinct(std::vector<double> values, double tol) {
  std::sort(values.rbegin(), values.rend());
  int n = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i == 0 || values[i - 1] - values[i] > tol) ++n;
  return n;
}

std::size_t best_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

}  // namespace

MartonResult marton_sum_rate(const MutualInfoFunctional& f, const BoundOptions& opts) {
  if (opts.starts < 1) throw std::invalid_argument("need at least one start");
  const EnvelopeFn e_d = f.envelope(Orientation::second_minus_first);   // C[F2 - F1]
  const EnvelopeFn e_md = f.envelope(Orientation::first_minus_second);  // C[F1 - F2]

  // Grouping W into the indices decoded privately by receiver 1 (total mass m,
  // mean x1) and by receiver 2 (mass 1 - m, mean x2), each group's private
  // term is maximized by the corresponding envelope.
  auto objective = [&](double m, double x1, double x2) {
    const double mean = m * x1 + (1.0 - m) * x2;
    return std::min(f.first(mean) + (1.0 - m) * e_d.value(x2), f.second(mean) + m * e_md.value(x1));
  };
  auto clamped = [&](std::span<const double> z) {
    return objective(std::clamp(z[0], 0.0, 1.0), std::clamp(z[1], 0.0, 1.0), std::clamp(z[2], 0.0, 1.0));
  };

  const std::size_t n = std::size_t(opts.starts);
  std::vector<std::array<double, 3>> point(n);
  std::vector<double> value(n);
  numeric::parallel_for(n, opts.threads, [&](std::size_t i) {
    std::mt19937_64 rng(numeric::mix_seed(opts.seed, i));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x0{u(rng), u(rng), u(rng)};
    numeric::SimplexOptions so{0.15, 1e-11, 1e-15, 3000};
    auto r = numeric::nelder_mead_max(clamped, x0, so);
    so.step = 0.02;
    r = numeric::nelder_mead_max(clamped, r.x, so);
    std::array<double, 3> z{std::clamp(r.x[0], 0.0, 1.0), std::clamp(r.x[1], 0.0, 1.0), std::clamp(r.x[2], 0.0, 1.0)};
    double fz = objective(z[0], z[1], z[2]);
    for (int sweep = 0; sweep < 3; ++sweep) {
      for (int c = 0; c < 3; ++c) {
        auto along = [&](double t) {
          auto y = z;
          y[c] = t;
          return objective(y[0], y[1], y[2]);
        };
        const double lo = std::max(0.0, z[c] - 0.05), hi = std::min(1.0, z[c] + 0.05);
        const auto g = numeric::golden_max(along, lo, hi, 1e-12);
        if (g.f > fz) {
          z[c] = g.x;
          fz = g.f;
        }
      }
    }
    point[i] = z;
    value[i] = fz;
  });

  const std::size_t b = best_index(value);
  const auto [m, x1, x2] = point[b];
  MartonResult res;
  res.distinct_optima = count_distinct(value, 1e-7);
  Decomposition g1 = m > 0.0 ? e_md.decompose(x1) : Decomposition{};
  Decomposition g2 = m < 1.0 ? e_d.decompose(x2) : Decomposition{};
  if (g1.size() + g2.size() > 5) throw std::logic_error("Marton witness exceeds five points");
  int j = 0;
  for (const Support& s : g1) {
    res.witness.beta[j] = m * s.weight;
    res.witness.p[j++] = s.point;
  }
  res.witness.k = j;
  for (const Support& s : g2) {
    res.witness.beta[j] = (1.0 - m) * s.weight;
    res.witness.p[j++] = s.point;
  }
  double total = 0.0;
  for (double w : res.witness.beta) total += w;
  for (double& w : res.witness.beta) w /= total;
  res.value = marton_value(f, res.witness);
  return res;
}

double uv_value(const MutualInfoFunctional& f, const UvWitness& w) {
  double total = 0.0, mean = 0.0;
  std::array<double, 3> pu{}, pv{}, su{}, sv{};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      const double p = w.weight[u][v];
      if (p < 0.0) throw std::invalid_argument("negative UV weight");
      total += p;
      mean += p * w.x[u][v];
      pu[u] += p;
      pv[v] += p;
      su[u] += p * w.x[u][v];
      sv[v] += p * w.x[u][v];
    }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("UV weights must sum to 1");
  mean = std::clamp(mean, 0.0, 1.0);
  // Every conditional rate given (U, V) is F_i at a deterministic input, which is zero.
  double iv1 = f.first(mean), iu2 = f.second(mean), dv = 0.0, du = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (pv[i] > 0.0) {
      const double m = std::clamp(sv[i] / pv[i], 0.0, 1.0);
      const double a = f.first(m), b = f.second(m);
      iv1 -= pv[i] * a;
      dv += pv[i] * (b - a);
    }
    if (pu[i] > 0.0) {
      const double m = std::clamp(su[i] / pu[i], 0.0, 1.0);
      const double a = f.first(m), b = f.second(m);
      iu2 -= pu[i] * b;
      du += pu[i] * (b - a);
    }
  }
  const double sum_v_then_u = f.first(mean) + dv;   // I(V;Y1) + I(U;Y2|V)
  const double sum_u_then_v = f.second(mean) - du;  // I(U;Y2) + I(V;Y1|U)
  return std::min({iv1 + iu2, sum_v_then_u, sum_u_then_v});
}

namespace {

using Map = std::array<int, 9>;

// Representatives of the 512 maps x(u, v) up to relabeling of U and of V.
std::vector<Map> canonical_maps() {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::set<Map> reps;
  for (int bits = 0; bits < 512; ++bits) {
    Map best{};
    bool first = true;
    for (const auto& pr : perms)
      for (const auto& pc : perms) {
        Map m{};
        for (int u = 0; u < 3; ++u)
          for (int v = 0; v < 3; ++v) m[3 * u + v] = (bits >> (3 * pr[u] + pc[v])) & 1;
        if (first || m < best) best = m;
        first = false;
      }
    int ones = 0;
    for (int b : best) ones += b;
    if (ones != 0 && ones != 9) reps.insert(best);
  }
  return {reps.begin(), reps.end()};
}

UvWitness witness_from(const Map& map, std::span<const double> z) {
  UvWitness w;
  double total = 0.0;
  for (int i = 0; i < 9; ++i) total += z[i] * z[i];
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      const int i = 3 * u + v;
      w.weight[u][v] = total > 0.0 ? z[i] * z[i] / total : 1.0 / 9.0;
      w.x[u][v] = map[i];
    }
  return w;
}

}  // namespace

UvResult uv_sum_rate(const MutualInfoFunctional& f, const BoundOptions& opts) {
  if (opts.starts < 1) throw std::invalid_argument("need at least one start");
  const std::vector<Map> maps = canonical_maps();
  const std::size_t per_map = std::size_t(std::max(4, (opts.starts + 4) / 5));
  const std::size_t n = maps.size() * per_map;
  std::vector<std::array<double, 9>> point(n);
  std::vector<double> value(n);

  numeric::parallel_for(n, opts.threads, [&](std::size_t i) {
    const Map& map = maps[i / per_map];
    auto obj = [&](std::span<const double> z) { return uv_value(f, witness_from(map, z)); };
    std::mt19937_64 rng(numeric::mix_seed(opts.seed ^ 0x5555, i));
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> x(9);
    for (double& v : x) v = u(rng);
    numeric::SimplexOptions so{0.2, 1e-10, 1e-15, 6000};
    auto r = numeric::nelder_mead_max(obj, x, so);
    for (int restart = 0; restart < 2; ++restart) {
      so.step = restart == 0 ? 0.1 : 0.02;
      auto again = numeric::nelder_mead_max(obj, r.x, so);
      if (again.f >= r.f) r = again;
    }
    std::copy(r.x.begin(), r.x.end(), point[i].begin());
    value[i] = r.f;
  });

  const std::size_t b = best_index(value);
  UvResult res;
  res.witness = witness_from(maps[b / per_map], point[b]);
  res.value = uv_value(f, res.witness);
  res.distinct_optima = count_distinct(value, 1e-7);
  res.maps_searched = int(maps.size());
  return res;
}

double superposition_sum_rate(const PbcParams& p) {
  const PbcParams cp = p.is_canonical() ? p : PbcParams::canonical(p.alpha, p.s1, p.s2, p.scale);
  return std::max(superposition_hyperplane(1.0, cp, Receiver::first).value,
                  superposition_hyperplane(1.0, cp, Receiver::second).value);
}

}  // namespace pbc
