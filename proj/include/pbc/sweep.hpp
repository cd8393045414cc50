#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pbc/classify.hpp"

namespace pbc {

enum class MapCell { superposition_optimal, degraded, unresolved };

std::string to_string(MapCell c);

struct OptimalityMap {
  double s1 = 0.0;
  std::vector<double> alphas;
  std::vector<double> s2s;
  std::vector<ChannelClass> classes;  // index a * s2s.size() + k
  std::vector<MapCell> cells;

  MapCell at(std::size_t a, std::size_t k) const { return cells[a * s2s.size() + k]; }
  std::size_t count(MapCell c) const;
};

// With resolve_stronger the unresolved band is settled by the stronger condition.
OptimalityMap optimality_map(double s1, const std::vector<double>& alpha_grid, const std::vector<double>& s2_grid,
                             bool resolve_stronger = false, unsigned threads = 1);

// Parameter box (alpha, s1, s2) in [0,1] x [0,b] x [0,k b].
struct BoxSpec {
  double b = 1.0;
  double k = 1.0;
  void validate() const;
};

struct FractionClosedForm {
  double less_noisy;  // lower bound on the superposition-optimal fraction
  double degraded;
};

FractionClosedForm fraction_closed_form(const BoxSpec& spec);

struct FractionEstimate {
  double less_noisy;
  double less_noisy_stderr;
  double degraded;
  double degraded_stderr;
  std::size_t samples;
};

FractionEstimate fraction_monte_carlo(const BoxSpec& spec, std::size_t n_samples, std::uint64_t seed,
                                      unsigned threads = 1);

}  // namespace pbc
