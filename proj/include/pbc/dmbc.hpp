#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "pbc/bounds.hpp"
#include "pbc/model.hpp"

namespace pbc {

// Binary-input broadcast channel; rows[x][y] = P(Y = y | X = x).
struct BinaryBC {
  std::array<std::vector<double>, 2> rows1;
  std::array<std::vector<double>, 2> rows2;

  void validate() const;
};

struct SkewedParams {
  double p1;
  double p2;
};

// Receiver 1: input 0 noiseless, input 1 flips to 0 with probability p1.
// Receiver 2: input 1 noiseless, input 0 flips to 1 with probability p2.
BinaryBC skewed_channel(const SkewedParams& p);

double dmbc_mutual_info(const BinaryBC& ch, Receiver which, double q);

MutualInfoFunctional dmbc_functional(const BinaryBC& ch, std::size_t grid_n = 2049);

enum class DmbcVerdict {
  effectively_less_noisy,
  stronger_condition_optimal,
  suboptimal,
  inconclusive,
};

std::string to_string(DmbcVerdict v);

struct DmbcOptions {
  std::size_t grid_n = 2049;
  int lambda_grid_size = 201;
  double tol = 1e-10;
  bool compare_marton = true;
  BoundOptions marton{16, 1, 1};
};

struct DmbcClass {
  DmbcVerdict verdict = DmbcVerdict::inconclusive;
  bool more_capable_first = false;
  bool more_capable_second = false;
  bool effectively_less_noisy_first = false;
  bool effectively_less_noisy_second = false;
  bool stronger_first = false;
  bool stronger_second = false;
  double capacity_first = 0.0;
  double capacity_second = 0.0;
  double marton = -1.0;  // negative when not evaluated
};

DmbcClass classify_dmbc(const BinaryBC& ch, const DmbcOptions& opts = {});

struct SkewedSweep {
  std::size_t grid_n = 0;
  std::vector<DmbcClass> cells;  // row-major, index i * grid_n + j for (p1_i, p2_j)
  std::vector<double> p;         // cell midpoints
  double effectively_less_noisy = 0.0;
  double stronger_condition = 0.0;
  double suboptimal = 0.0;
  double inconclusive = 0.0;
  std::size_t more_capable_cells = 0;

  double optimal() const { return effectively_less_noisy + stronger_condition; }
  const DmbcClass& at(std::size_t i, std::size_t j) const { return cells[i * grid_n + j]; }
};

SkewedSweep skewed_sweep(std::size_t grid_n, const DmbcOptions& opts = {}, unsigned threads = 1);

}  // namespace pbc
