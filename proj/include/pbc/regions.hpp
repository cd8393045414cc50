#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pbc/classify.hpp"
#include "pbc/envelope.hpp"
#include "pbc/model.hpp"

namespace pbc {

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

struct WeightedSumRate {
  double lambda = 0.0;
  double value = 0.0;  // lambda * R_stronger + R_weaker
  double p_star = 0.0;
  Decomposition decomposition;
  RatePoint point;  // canonical receiver labels
};

// max over p(u,x) of lambda I(X;Y_s|U) + I(U;Y_w), the superposition outer form.
// For lambda > 1 the value is lambda times the lambda = 1 value. Canonical parameters.
WeightedSumRate weighted_sum_rate(double lambda, const PbcParams& p, Receiver stronger = Receiver::first);

// Same hyperplane for the superposition region with its sum-rate constraint
// R_s + R_w <= I(X;Y_s). Canonical parameters.
WeightedSumRate superposition_hyperplane(double lambda, const PbcParams& p, Receiver stronger = Receiver::first);

class RegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RegionBoundary {
  std::vector<RatePoint> points;  // caller's receiver labels, sorted by r1, Pareto-nondominated
  std::vector<double> lambdas;    // slope of the supporting line lambda r1 + r2 for each point
  ChannelClass regime;
  Receiver stronger = Receiver::first;  // caller's labels
};

// Region for a less noisy or effectively less noisy receiver.
RegionBoundary region_less_noisy(const PbcParams& p, std::size_t n_points = 65, unsigned threads = 1);
// Region for a more capable receiver, including the sum-rate constraint.
RegionBoundary region_more_capable(const PbcParams& p, std::size_t n_points = 65, unsigned threads = 1);

// max over boundary points of lambda r1 + r2.
double support_value(const RegionBoundary& b, double lambda);

// Default slope set: 0, 1 and 63 log-spaced values in [1e-3, 16].
std::vector<double> default_lambdas();

}  // namespace pbc
