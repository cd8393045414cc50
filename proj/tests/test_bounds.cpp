#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pbc/bounds.hpp"
#include "pbc/regions.hpp"

using namespace pbc;
using doctest::Approx;

namespace {

PbcParams at(double alpha, double s1 = 0.1, double s2 = 1.0) { return PbcParams{alpha, s1, s2, 1.0, false}; }

double recompute(const MutualInfoFunctional& f, const MartonResult& r) {
  return oracle::marton_from_witness(f.first, f.second, r.witness.k, r.witness.beta, r.witness.p);
}

double recompute(const MutualInfoFunctional& f, const UvResult& r) {
  return oracle::uv_from_witness(f.first, f.second, r.witness.weight, r.witness.x);
}

}  // namespace

TEST_CASE("identical receivers") {
  const PbcParams p = at(1.0, 0.5, 0.5);
  const auto f = MutualInfoFunctional::from_params(p);
  const double c = capacity(Receiver::first, p);
  CHECK(marton_sum_rate(f, {16, 1, 1}).value == Approx(c).epsilon(1e-9));
  CHECK(superposition_sum_rate(p) == Approx(c).epsilon(1e-9));
  CHECK(uv_sum_rate(f, {4, 1, 1}).value == Approx(c).epsilon(1e-7));
}

TEST_CASE("Fig. 9 values at alpha = 0.34") {
  const PbcParams p = at(0.34);
  const auto f = MutualInfoFunctional::from_params(p);
  const MartonResult m = marton_sum_rate(f);
  const UvResult u = uv_sum_rate(f);
  const double s = superposition_sum_rate(p);
  CHECK(s == Approx(0.0852234036).epsilon(1e-9));
  CHECK(m.value == Approx(0.0885258580).epsilon(1e-8));
  CHECK(u.value == Approx(0.0889217496).epsilon(1e-8));
  CHECK(s < m.value - 1e-3);
  CHECK(m.value < u.value - 1e-4);
  CHECK(recompute(f, m) == Approx(m.value).epsilon(1e-9));
  CHECK(recompute(f, u) == Approx(u.value).epsilon(1e-9));
  CHECK(u.maps_searched == 34);
  CHECK(m.distinct_optima >= 1);
}

TEST_CASE("coincidence band") {
  for (double alpha : {0.27, 0.28, 0.286}) {
    const PbcParams p = at(alpha);
    const auto f = MutualInfoFunctional::from_params(p);
    const double m = marton_sum_rate(f).value, u = uv_sum_rate(f).value, s = superposition_sum_rate(p);
    CHECK(std::abs(m - s) <= 1e-3);
    CHECK(std::abs(u - s) <= 1e-3);
    CHECK(std::abs(u - m) <= 1e-3);
  }
}

TEST_CASE("sandwich and witness recomputation") {
  for (double alpha : {0.1, 0.2, 0.3, 0.37, 0.45, 0.7}) {
    const PbcParams p = at(alpha);
    const auto f = MutualInfoFunctional::from_params(p);
    const MartonResult m = marton_sum_rate(f, {32, 3, 2});
    const UvResult u = uv_sum_rate(f, {8, 3, 2});
    const double s = superposition_sum_rate(p);
    CHECK_MESSAGE(s <= m.value + 1e-9, "alpha=", alpha);
    CHECK_MESSAGE(m.value <= u.value + 1e-9, "alpha=", alpha);
    CHECK(recompute(f, m) == Approx(m.value).epsilon(1e-9));
    CHECK(recompute(f, u) == Approx(u.value).epsilon(1e-9));
    double total = 0.0;
    for (double b : m.witness.beta) {
      CHECK(b >= 0.0);
      total += b;
    }
    CHECK(total == Approx(1.0).epsilon(1e-12));
    CHECK(m.witness.k >= 0);
    CHECK(m.witness.k <= 5);
  }
}

TEST_CASE("Marton against the grid lower bound") {
  for (double alpha : {0.3, 0.34, 0.38}) {
    const PbcParams p = at(alpha);
    const auto f = MutualInfoFunctional::from_params(p);
    const double grid = oracle::marton_grid_lower_bound(f.first, f.second, 101, 100);
    const double m = marton_sum_rate(f).value;
    CHECK(grid <= m + 1e-9);
    CHECK(m - grid < 5e-3);
  }
}

TEST_CASE("multi-start stability and determinism") {
  const auto f = MutualInfoFunctional::from_params(at(0.34));
  const double m64 = marton_sum_rate(f, {64, 1, 1}).value, m128 = marton_sum_rate(f, {128, 1, 1}).value;
  CHECK(std::abs(m64 - m128) < 1e-6);
  CHECK(marton_sum_rate(f, {64, 1, 4}).value == m64);
  const double u1 = uv_sum_rate(f, {16, 5, 1}).value, u4 = uv_sum_rate(f, {16, 5, 4}).value;
  CHECK(u1 == u4);
}

TEST_CASE("UV witness plug-ins") {
  const auto f = MutualInfoFunctional::from_params(at(0.34));
  for (double q : {0.2, 0.45, 0.8}) {
    UvWitness w;
    w.weight[0] = {1.0 - q, q, 0.0};
    w.x[0] = {0, 1, 0};
    CHECK(uv_value(f, w) == Approx(f.first(q)).epsilon(1e-14));
    CHECK(oracle::uv_from_witness(f.first, f.second, w.weight, w.x) == Approx(f.first(q)).epsilon(1e-14));
    UvWitness v;
    v.weight[0][0] = 1.0 - q;
    v.weight[1][0] = q;
    v.x[1][0] = 1;
    CHECK(uv_value(f, v) == Approx(f.second(q)).epsilon(1e-14));
  }
  UvWitness bad;
  bad.weight[0][0] = 0.5;
  CHECK_THROWS(uv_value(f, bad));
}

TEST_CASE("Marton witness validation") {
  const auto f = MutualInfoFunctional::from_params(at(0.34));
  MartonWitness w;
  w.beta = {0.5, 0.5, 0, 0, 0};
  w.p = {0.2, 0.9, 0, 0, 0};
  w.k = 1;
  CHECK(marton_value(f, w) == Approx(oracle::marton_from_witness(f.first, f.second, 1, w.beta, w.p)).epsilon(1e-14));
  w.beta[1] = 0.4;
  CHECK_THROWS(marton_value(f, w));
}

TEST_CASE("superposition sum rate") {
  const PbcParams ln = at(0.7);
  CHECK(superposition_sum_rate(ln) == Approx(weighted_sum_rate(1.0, ln).value).epsilon(1e-9));
  CHECK(superposition_sum_rate(ln) == Approx(capacity(Receiver::first, ln)).epsilon(1e-9));
  const PbcParams dg = at(1.5);
  CHECK(superposition_sum_rate(dg) == Approx(capacity(Receiver::first, dg)).epsilon(1e-9));
  // Mirrored input gives the same value.
  CHECK(superposition_sum_rate(PbcParams{1.0 / 0.34, 1.0, 0.1, 0.34, false}) ==
        Approx(superposition_sum_rate(at(0.34))).epsilon(1e-12));
}

TEST_CASE("sampled functionals reproduce the analytic ones") {
  const PbcParams p = at(0.34);
  const auto a = MutualInfoFunctional::from_params(p);
  const auto s = MutualInfoFunctional::from_functions(a.first, a.second, 20001);
  CHECK(marton_sum_rate(s, {32, 1, 2}).value == Approx(marton_sum_rate(a, {32, 1, 2}).value).epsilon(1e-6));
  CHECK_THROWS(MutualInfoFunctional::from_functions(a.first, a.second, 1));
}

TEST_CASE("swapped functional keeps caller labels") {
  const auto f = MutualInfoFunctional::from_params(PbcParams{1.0 / 0.34, 1.0, 0.1, 0.34, false});
  const auto g = MutualInfoFunctional::from_params(at(0.34));
  for (double q : {0.3, 0.6}) {
    CHECK(f.first(q) == Approx(g.second(q)).epsilon(1e-14));
    CHECK(f.second(q) == Approx(g.first(q)).epsilon(1e-14));
    CHECK(f.envelope(Orientation::first_minus_second).value(q) ==
          Approx(g.envelope(Orientation::second_minus_first).value(q)).epsilon(1e-14));
  }
  CHECK(marton_sum_rate(f, {32, 1, 1}).value == Approx(marton_sum_rate(g, {32, 1, 1}).value).epsilon(1e-9));
}
