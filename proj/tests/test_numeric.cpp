#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "pbc/numeric.hpp"

using namespace pbc::numeric;
using doctest::Approx;

TEST_CASE("golden section and bisection") {
  const Extremum m = golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-12);
  CHECK(m.x == Approx(0.3).epsilon(1e-9));
  const Extremum n = golden_min([](double x) { return std::cosh(x - 0.7); }, 0.0, 2.0, 1e-12);
  CHECK(n.x == Approx(0.7).epsilon(1e-7));
  const Extremum g = grid_golden_max([](double x) { return std::sin(12 * x) - x; }, 0.0, 1.0, 64, 1e-12);
  CHECK(g.x == Approx(std::acos(1.0 / 12.0) / 12.0).epsilon(1e-7));
  CHECK(bisect_increasing([](double x) { return x * x * x; }, 0.125, 0.0, 1.0, 1e-14) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Nelder-Mead") {
  auto f = [](std::span<const double> x) { return -std::pow(x[0] - 1, 2) - 10 * std::pow(x[1] + 0.5, 2); };
  const SimplexResult r = nelder_mead_max(f, {0.0, 0.0}, {});
  CHECK(r.x[0] == Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == Approx(-0.5).epsilon(1e-6));
  CHECK(r.evaluations > 0);
}

TEST_CASE("upper hull") {
  const std::vector<double> x{0, 1, 2, 3, 4}, y{0, 2, 1, 3, 0};
  const std::vector<std::size_t> h = upper_hull(x, y);
  CHECK(h == std::vector<std::size_t>{0, 1, 3, 4});
  const std::vector<double> cx{0, 1, 2}, cy{0, 1, 2};
  CHECK(upper_hull(cx, cy) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("parallel_for covers each index once and propagates errors") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 7, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, 4, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  CHECK(default_threads() >= 1);
}

TEST_CASE("seed mixing and linspace") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(5, 9) == mix_seed(5, 9));
  const std::vector<double> l = linspace(0.0, 1.0, 5);
  CHECK(l == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}
