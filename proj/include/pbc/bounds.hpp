#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "pbc/envelope.hpp"
#include "pbc/model.hpp"

namespace pbc {

// Pair of single-letter rate maps q -> I(X;Y_i) for X ~ Bern(q). Both must
// vanish at q = 0 and q = 1.
struct MutualInfoFunctional {
  std::function<double(double)> first;
  std::function<double(double)> second;
  // Envelope provider for C[F1 - F2] or C[F2 - F1].
  std::function<EnvelopeFn(Orientation)> envelope;

  double operator()(Receiver r, double q) const { return r == Receiver::first ? first(q) : second(q); }

  static MutualInfoFunctional from_params(const PbcParams& p);
  // Envelopes taken from a convex hull over a uniform grid.
  static MutualInfoFunctional from_functions(std::function<double(double)> f1, std::function<double(double)> f2,
                                             std::size_t grid_n = 20001);
};

struct BoundOptions {
  int starts = 64;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct MartonWitness {
  int k = 0;  // entries 0..k-1 carry the receiver-1 private term
  std::array<double, 5> beta{};
  std::array<double, 5> p{};
};

struct MartonResult {
  double value = 0.0;
  MartonWitness witness;
  int distinct_optima = 0;
};

// Sum-rate expression of the randomized time-division form for a witness.
double marton_value(const MutualInfoFunctional& f, const MartonWitness& w);
MartonResult marton_sum_rate(const MutualInfoFunctional& f, const BoundOptions& opts = {});

struct UvWitness {
  std::array<std::array<double, 3>, 3> weight{};  // p(u, v), u row, v column
  std::array<std::array<int, 3>, 3> x{};         // deterministic input map x(u, v)
};

struct UvResult {
  double value = 0.0;
  UvWitness witness;
  int distinct_optima = 0;
  int maps_searched = 0;
};

// min of the UV sum-rate expressions for a witness.
double uv_value(const MutualInfoFunctional& f, const UvWitness& w);
UvResult uv_sum_rate(const MutualInfoFunctional& f, const BoundOptions& opts = {});

// Largest superposition-coding sum rate over both decoding orders.
double superposition_sum_rate(const PbcParams& p);

}  // namespace pbc
