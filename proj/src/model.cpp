#include "pbc/model.hpp"

#include <cmath>
#include <string>

namespace pbc {

void PbcParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and nonnegative");
  if (!(s1 >= 0.0) || !(s2 >= 0.0) || !std::isfinite(s1) || !std::isfinite(s2))
    throw std::invalid_argument("dark currents must be finite and nonnegative");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
}

PbcParams PbcParams::canonical(double alpha, double s1, double s2, double scale) {
  PbcParams p{alpha, s1, s2, scale, false};
  p.validate();
  if (s1 <= s2) return p;
  if (alpha == 0.0) throw std::invalid_argument("alpha = 0 cannot be reoriented (receiver 1 has zero gain)");
  return PbcParams{1.0 / alpha, s2, s1, alpha * scale, true};
}

PbcParams PbcParams::from_gains(double a1, double a2, double s1, double s2) {
  if (!(a2 > 0.0)) throw std::invalid_argument("A2 must be positive");
  return canonical(a1 / a2, s1, s2, a2);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

namespace {

double gain(Receiver w, const PbcParams& p) { return w == Receiver::first ? p.alpha : 1.0; }
double dark(Receiver w, const PbcParams& p) { return w == Receiver::first ? p.s1 : p.s2; }

double unit_rate(double q, double s) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -xlogx(q + s) + q * xlogx(1.0 + s) + (1.0 - q) * xlogx(s);
}

}  // namespace

double mutual_info_rate(Receiver which, double q, const PbcParams& p) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("input probability outside [0,1]");
  return p.scale * gain(which, p) * unit_rate(q, dark(which, p));
}

double optimal_input(double s) {
  if (s == 0.0) return std::exp(-1.0);
  if (s < 1.0) return std::exp((1.0 + s) * std::log1p(s) - s * std::log(s) - 1.0) - s;
  return s * std::expm1((1.0 + s) * std::log1p(1.0 / s) - 1.0);
}

double optimal_input(Receiver which, const PbcParams& p) { return optimal_input(dark(which, p)); }

double capacity(Receiver which, const PbcParams& p) {
  return mutual_info_rate(which, optimal_input(which, p), p);
}

Derivatives mutual_info_derivs(Receiver which, double q, const PbcParams& p) {
  const double s = dark(which, p);
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("input probability outside [0,1]");
  if (s == 0.0 && (q == 0.0 || q == 1.0))
    throw DomainError("derivative diverges at the endpoint when the dark current is zero");
  const double a = p.scale * gain(which, p);
  const double d1 = -std::log(q + s) - 1.0 + xlogx(1.0 + s) - xlogx(s);
  return {a * d1, -a / (q + s)};
}

double second_derivative_gap(double q, const PbcParams& p) {
  return p.scale * ((p.alpha - 1.0) * q + p.alpha * p.s2 - p.s1) / ((q + p.s1) * (q + p.s2));
}

BinaryApprox binary_approx(const PbcParams& p, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const double g1 = p.alpha * p.scale, g2 = p.scale;
  BinaryApprox b{delta, g1 * p.s1 * delta, g2 * p.s2 * delta, g1 * (1.0 + p.s1) * delta, g2 * (1.0 + p.s2) * delta};
  if (b.b1 > 1.0 || b.b2 > 1.0) throw std::invalid_argument("delta too large: transition probability exceeds 1");
  return b;
}

namespace {

// Binary entropy in nats, accurate for small arguments.
double hb(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

}  // namespace

double binary_mutual_info_rate(const BinaryApprox& b, Receiver which, double q) {
  const double a = which == Receiver::first ? b.a1 : b.a2;
  const double c = which == Receiver::first ? b.b1 : b.b2;
  const double mi = hb((1.0 - q) * a + q * c) - (1.0 - q) * hb(a) - q * hb(c);
  return mi / b.delta;
}

}  // namespace pbc
