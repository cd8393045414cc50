#include "pbc/dmbc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbc/envelope.hpp"
#include "pbc/numeric.hpp"

namespace pbc {

void BinaryBC::validate() const {
  for (const auto* rows : {&rows1, &rows2}) {
    if ((*rows)[0].size() != (*rows)[1].size() || (*rows)[0].empty())
      throw std::invalid_argument("transition rows must share a nonempty output alphabet");
    for (const auto& row : *rows) {
      double total = 0.0;
      for (double v : row) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("transition probability outside [0,1]");
        total += v;
      }
      if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("transition row does not sum to 1");
    }
  }
}

BinaryBC skewed_channel(const SkewedParams& p) {
  if (!(p.p1 > 0.0 && p.p1 < 1.0 && p.p2 > 0.0 && p.p2 < 1.0))
    throw std::invalid_argument("skewed channel parameters must lie in (0,1)");
  BinaryBC ch;
  ch.rows1 = {std::vector<double>{1.0, 0.0}, std::vector<double>{p.p1, 1.0 - p.p1}};
  ch.rows2 = {std::vector<double>{1.0 - p.p2, p.p2}, std::vector<double>{0.0, 1.0}};
  return ch;
}

double dmbc_mutual_info(const BinaryBC& ch, Receiver which, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("input probability outside [0,1]");
  const auto& rows = which == Receiver::first ? ch.rows1 : ch.rows2;
  double mi = 0.0;
  for (std::size_t y = 0; y < rows[0].size(); ++y) {
    const double py = (1.0 - q) * rows[0][y] + q * rows[1][y];
    mi -= xlogx(py);
    mi += (1.0 - q) * xlogx(rows[0][y]) + q * xlogx(rows[1][y]);
  }
  return std::max(0.0, mi);
}

MutualInfoFunctional dmbc_functional(const BinaryBC& ch, std::size_t grid_n) {
  ch.validate();
  return MutualInfoFunctional::from_functions([ch](double q) { return dmbc_mutual_info(ch, Receiver::first, q); },
                                              [ch](double q) { return dmbc_mutual_info(ch, Receiver::second, q); },
                                              grid_n);
}

std::string to_string(DmbcVerdict v) {
  switch (v) {
    case DmbcVerdict::effectively_less_noisy: return "effectively-less-noisy";
    case DmbcVerdict::stronger_condition_optimal: return "stronger-condition-optimal";
    case DmbcVerdict::suboptimal: return "suboptimal";
    case DmbcVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Kullback-Leibler divergence D(a || b) in nats; infinite when a is not dominated by b.
double kl(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t y = 0; y < a.size(); ++y) {
    if (a[y] == 0.0) continue;
    if (b[y] == 0.0) return INFINITY;
    d += a[y] * std::log(a[y] / b[y]);
  }
  return d;
}

// Sign of F1 - F2 just inside q = 0 and q = 1 from the one-sided slopes
// F'(0) = D(W1 || W0) and F'(1) = -D(W0 || W1). Returns +1, -1 or 0 when undecided.
std::pair<int, int> endpoint_signs(const BinaryBC& ch) {
  auto sign = [](double a, double b) {
    if (std::isinf(a) && std::isinf(b)) return 0;
    return a > b ? 1 : (a < b ? -1 : 0);
  };
  const int at0 = sign(kl(ch.rows1[1], ch.rows1[0]), kl(ch.rows2[1], ch.rows2[0]));
  const int at1 = sign(kl(ch.rows1[0], ch.rows1[1]), kl(ch.rows2[0], ch.rows2[1]));
  return {at0, at1};
}

struct OrientationCheck {
  bool effectively_less_noisy = true;
  bool stronger = true;
};

// fs is the candidate stronger receiver, fw the weaker one.
OrientationCheck check_orientation(const std::vector<double>& x, const std::vector<double>& fs,
                                   const std::vector<double>& fw, const DmbcOptions& opts) {
  const std::size_t n = x.size();
  std::vector<double> d(n), y(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = fs[i] - fw[i];
  const SampledEnvelope ed(x, d);

  OrientationCheck r;
  for (double lambda : numeric::linspace(0.0, 1.0, std::size_t(opts.lambda_grid_size))) {
    for (std::size_t i = 0; i < n; ++i) y[i] = lambda * fs[i] - fw[i];
    const SampledEnvelope ey(x, y);
    std::size_t k = 0;
    double best = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = fw[i] + ey.values()[i];
      if (v > best) {
        best = v;
        k = i;
      }
    }
    if (ed.values()[k] - d[k] > opts.tol) r.effectively_less_noisy = false;
    // Chords spanning at most two grid steps are grid artifacts of a touching envelope.
    if (ey.span_at(k) > 2) {
      double margin = d[k];
      for (const Support& s : ey.decompose_at(k)) {
        const auto idx = std::size_t(std::llround(s.point * double(n - 1)));
        margin -= s.weight * d[idx];
      }
      if (margin < -opts.tol) r.stronger = false;
    }
    if (!r.effectively_less_noisy && !r.stronger) break;
  }
  return r;
}

}  // namespace

DmbcClass classify_dmbc(const BinaryBC& ch, const DmbcOptions& opts) {
  ch.validate();
  if (opts.grid_n < 3) throw std::invalid_argument("grid too small");
  const std::vector<double> x = numeric::linspace(0.0, 1.0, opts.grid_n);
  std::vector<double> f1(x.size()), f2(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    f1[i] = dmbc_mutual_info(ch, Receiver::first, x[i]);
    f2[i] = dmbc_mutual_info(ch, Receiver::second, x[i]);
  }
  DmbcClass c;
  c.more_capable_first = c.more_capable_second = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (f1[i] - f2[i] < -opts.tol) c.more_capable_first = false;
    if (f2[i] - f1[i] < -opts.tol) c.more_capable_second = false;
  }
  // The difference can change sign closer to an endpoint than any grid resolves.
  const auto [at0, at1] = endpoint_signs(ch);
  if (at0 < 0 || at1 < 0) c.more_capable_first = false;
  if (at0 > 0 || at1 > 0) c.more_capable_second = false;
  const auto o1 = check_orientation(x, f1, f2, opts);
  const auto o2 = check_orientation(x, f2, f1, opts);
  c.effectively_less_noisy_first = o1.effectively_less_noisy;
  c.effectively_less_noisy_second = o2.effectively_less_noisy;
  c.stronger_first = o1.stronger;
  c.stronger_second = o2.stronger;

  auto cap = [&](Receiver r) {
    return numeric::grid_golden_max([&](double q) { return dmbc_mutual_info(ch, r, q); }, 0.0, 1.0, 256, 1e-12).f;
  };
  c.capacity_first = cap(Receiver::first);
  c.capacity_second = cap(Receiver::second);

  if (c.effectively_less_noisy_first || c.effectively_less_noisy_second) {
    c.verdict = DmbcVerdict::effectively_less_noisy;
  } else if (c.stronger_first || c.stronger_second) {
    c.verdict = DmbcVerdict::stronger_condition_optimal;
  } else if (opts.compare_marton) {
    c.marton = marton_sum_rate(dmbc_functional(ch, opts.grid_n), opts.marton).value;
    c.verdict = c.marton > std::max(c.capacity_first, c.capacity_second) + 1e-9 ? DmbcVerdict::suboptimal
                                                                                : DmbcVerdict::inconclusive;
  }
  return c;
}

SkewedSweep skewed_sweep(std::size_t grid_n, const DmbcOptions& opts, unsigned threads) {
  if (grid_n < 1) throw std::invalid_argument("grid_n must be positive");
  SkewedSweep s;
  s.grid_n = grid_n;
  s.cells.resize(grid_n * grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) s.p.push_back((double(i) + 0.5) / double(grid_n));
  DmbcOptions inner = opts;
  inner.marton.threads = 1;
  numeric::parallel_for(s.cells.size(), threads, [&](std::size_t idx) {
    s.cells[idx] = classify_dmbc(skewed_channel({s.p[idx / grid_n], s.p[idx % grid_n]}), inner);
  });
  std::array<std::size_t, 4> counts{};
  for (const DmbcClass& c : s.cells) {
    ++counts[std::size_t(c.verdict)];
    if (c.more_capable_first || c.more_capable_second) ++s.more_capable_cells;
  }
  const double total = double(s.cells.size());
  s.effectively_less_noisy = double(counts[0]) / total;
  s.stronger_condition = double(counts[1]) / total;
  s.suboptimal = double(counts[2]) / total;
  s.inconclusive = double(counts[3]) / total;
  return s;
}

}  // namespace pbc
