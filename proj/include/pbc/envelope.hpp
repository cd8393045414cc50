#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pbc/model.hpp"

namespace pbc {

enum class Orientation {
  first_minus_second,  // I1 - I2
  second_minus_first,  // I2 - I1
};

struct Support {
  double weight;
  double point;
};

// Mixture of input probabilities whose mean is the queried point.
using Decomposition = std::vector<Support>;

double decomposition_mean(const Decomposition& d);

double g1(double x, double s1, double s2);
double g2(double x, double s1, double s2);

enum class GFunction { g1, g2 };

// Solves g(x) = target by bisection; returns 0 or 1 when the target lies
// at or beyond the corresponding end of g's range.
double invert_g(GFunction which, double target, double s1, double s2);

// Upper concave envelope of a lambda-weighted rate difference, in closed form.
//   first_minus_second:  C[lambda I1 - I2]
//   second_minus_first:  C[lambda I2 - I1]
class PiecewiseEnvelope {
 public:
  PiecewiseEnvelope(const PbcParams& p, Orientation o, double lambda = 1.0);

  Orientation orientation() const { return orientation_; }
  double lambda() const { return lambda_; }
  double breakpoint() const { return breakpoint_; }
  // Gain ratio after absorbing lambda.
  double effective_alpha() const { return alpha_eff_; }

  double raw(double q) const;
  double operator()(double q) const;
  Decomposition decompose(double q) const;
  // True where the envelope coincides with the raw difference.
  bool touches(double q) const;

 private:
  double base_raw(double q) const;

  PbcParams params_;
  PbcParams shifted_;
  Orientation orientation_;
  double lambda_;
  double alpha_eff_;
  double breakpoint_;
  double breakpoint_value_;
};

PiecewiseEnvelope analytic_envelope(Orientation o, const PbcParams& p);
PiecewiseEnvelope scaled_envelope(double lambda, const PbcParams& p,
                                  Orientation o = Orientation::first_minus_second);

// Envelope of sampled values over a strictly increasing grid.
class SampledEnvelope {
 public:
  SampledEnvelope(std::vector<double> grid, std::vector<double> values);

  std::size_t size() const { return grid_.size(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& samples() const { return values_; }
  const std::vector<std::size_t>& vertices() const { return vertices_; }
  const std::vector<double>& values() const { return envelope_; }

  // Index of the hull edge [vertices[k], vertices[k+1]] containing grid point i.
  std::size_t edge_of(std::size_t i) const { return edge_[i]; }
  Decomposition decompose_at(std::size_t i) const;
  // Number of grid steps spanned by the hull edge supporting grid point i (0 on a vertex).
  std::size_t span_at(std::size_t i) const;

  double operator()(double q) const;
  Decomposition decompose(double q) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<std::size_t> vertices_;
  std::vector<std::size_t> edge_;
  std::vector<double> envelope_;
};

SampledEnvelope hull_envelope(std::vector<double> grid, std::vector<double> values);

// Type-erased envelope handle shared by the generic bounds code.
struct EnvelopeFn {
  std::function<double(double)> value;
  std::function<Decomposition(double)> decompose;
};

EnvelopeFn as_function(PiecewiseEnvelope env);
EnvelopeFn as_function(SampledEnvelope env);

}  // namespace pbc
