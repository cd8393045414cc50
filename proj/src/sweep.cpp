#include "pbc/sweep.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pbc/numeric.hpp"

namespace pbc {

std::string to_string(MapCell c) {
  switch (c) {
    case MapCell::superposition_optimal: return "shaded";
    case MapCell::degraded: return "degraded";
    case MapCell::unresolved: return "blank";
  }
  return "unknown";
}

std::size_t OptimalityMap::count(MapCell c) const {
  std::size_t n = 0;
  for (MapCell x : cells) n += x == c;
  return n;
}

OptimalityMap optimality_map(double s1, const std::vector<double>& alpha_grid, const std::vector<double>& s2_grid,
                             bool resolve_stronger, unsigned threads) {
  if (!(s1 >= 0.0)) throw std::invalid_argument("s1 must be nonnegative");
  for (double s2 : s2_grid)
    if (!(s2 >= s1)) throw std::invalid_argument("s2 grid must not go below s1");
  OptimalityMap m;
  m.s1 = s1;
  m.alphas = alpha_grid;
  m.s2s = s2_grid;
  m.classes.resize(alpha_grid.size() * s2_grid.size());
  m.cells.resize(m.classes.size());
  numeric::parallel_for(m.classes.size(), threads, [&](std::size_t i) {
    const PbcParams p{alpha_grid[i / s2_grid.size()], s1, s2_grid[i % s2_grid.size()], 1.0, false};
    ChannelClass c = resolve_stronger ? classify_resolved(p) : classify(p);
    if (c.verdict == Verdict::degraded)
      m.cells[i] = MapCell::degraded;
    else if (c.verdict == Verdict::unresolved)
      m.cells[i] = MapCell::unresolved;
    else
      m.cells[i] = MapCell::superposition_optimal;
    m.classes[i] = std::move(c);
  });
  return m;
}

void BoxSpec::validate() const {
  if (!(b > 0.0) || !(k > 0.0) || !std::isfinite(b) || !std::isfinite(k))
    throw std::invalid_argument("box bounds must be positive and finite");
}

FractionClosedForm fraction_closed_form(const BoxSpec& spec) {
  spec.validate();
  const double b = spec.b, k = spec.k, kb = k * b, b0 = std::min(b, kb);
  // Mass of the not-less-noisy set, integrated over s1 <= s2.
  const double mass = b0 * b0 / 2.0 * (std::log((1.0 + kb) / kb) - std::log((1.0 + b0) / b0)) -
                      std::log1p(b0) / 2.0 + b0 * (std::log1p(kb) - std::log1p(b0) + 0.5);
  FractionClosedForm f;
  f.less_noisy = 1.0 - mass / (k * b * b);
  f.degraded = k >= 1.0 ? 0.5 / k : 1.0 - 0.5 * k;
  return f;
}

FractionEstimate fraction_monte_carlo(const BoxSpec& spec, std::size_t n_samples, std::uint64_t seed,
                                      unsigned threads) {
  spec.validate();
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  constexpr std::size_t partitions = 64;
  std::vector<std::size_t> less_noisy(partitions), degraded(partitions);
  numeric::parallel_for(partitions, threads, [&](std::size_t part) {
    const std::size_t n = n_samples / partitions + (part < n_samples % partitions ? 1 : 0);
    std::mt19937_64 rng(numeric::mix_seed(seed, part));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t ln = 0, dg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double alpha = u(rng);
      double s1 = spec.b * u(rng);
      double s2 = spec.k * spec.b * u(rng);
      if (s1 > s2) {
        std::swap(s1, s2);
        alpha = alpha > 0.0 ? 1.0 / alpha : INFINITY;
      }
      const bool deg = alpha >= 1.0;
      const bool less = deg || alpha <= (s2 > 0.0 ? s1 / s2 : 1.0) || alpha >= (1.0 + s1) / (1.0 + s2);
      dg += deg;
      ln += less;
    }
    less_noisy[part] = ln;
    degraded[part] = dg;
  });
  std::size_t ln = 0, dg = 0;
  for (std::size_t i = 0; i < partitions; ++i) {
    ln += less_noisy[i];
    dg += degraded[i];
  }
  const double n = double(n_samples);
  FractionEstimate e;
  e.samples = n_samples;
  e.less_noisy = double(ln) / n;
  e.degraded = double(dg) / n;
  e.less_noisy_stderr = std::sqrt(e.less_noisy * (1.0 - e.less_noisy) / n);
  e.degraded_stderr = std::sqrt(e.degraded * (1.0 - e.degraded) / n);
  return e;
}

}  // namespace pbc
