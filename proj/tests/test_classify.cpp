#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pbc/classify.hpp"

using namespace pbc;
using doctest::Approx;

namespace {

PbcParams at(double alpha, double s1 = 0.1, double s2 = 1.0) { return PbcParams{alpha, s1, s2, 1.0, false}; }

}  // namespace

TEST_CASE("breakpoints at (0.1, 1)") {
  const Breakpoints b = breakpoints(0.1, 1.0);
  CHECK(b.alpha4 == Approx(0.1).epsilon(1e-15));
  CHECK(b.alpha1 == Approx(0.55).epsilon(1e-15));
  CHECK(b.alpha3 == Approx(oracle::alpha3_ref).epsilon(1e-9));
  CHECK(b.alpha23 == Approx(oracle::alpha23_ref).epsilon(1e-9));
  CHECK(b.alpha2 == Approx(oracle::alpha2_ref).epsilon(1e-9));
  CHECK(b.alpha12 == Approx(oracle::alpha12_ref).epsilon(1e-9));
  // Paper: alpha23 = 0.27, alpha2 = 0.4.
  CHECK(std::abs(b.alpha23 - 0.27) <= 0.005);
  CHECK(std::abs(b.alpha2 - 0.40) <= 0.005);
  CHECK(b.alpha3 == Approx(oracle::g1(0.0, 0.1, 1.0)).epsilon(1e-11));
  CHECK(b.alpha12 == Approx(oracle::g1(optimal_input(1.0), 0.1, 1.0)).epsilon(1e-11));
  CHECK(b.alpha23 == Approx(oracle::g2(optimal_input(0.1), 0.1, 1.0)).epsilon(1e-11));
}

TEST_CASE("equal dark currents give unit breakpoints") {
  for (double s : {0.0, 0.3, 4.0}) {
    const Breakpoints b = breakpoints(s, s);
    for (double v : {b.alpha4, b.alpha3, b.alpha23, b.alpha2, b.alpha12, b.alpha1}) CHECK(v == 1.0);
  }
  CHECK_THROWS(breakpoints(1.0, 0.1));
  CHECK_THROWS(breakpoints(-1.0, 0.1));
}

TEST_CASE("breakpoint ordering") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    double s1 = std::pow(10.0, u(rng)), s2 = std::pow(10.0, u(rng));
    if (s1 > s2) std::swap(s1, s2);
    const Breakpoints b = breakpoints(s1, s2);
    const double slack = 1e-10;
    CHECK(b.alpha4 <= b.alpha3 + slack);
    CHECK(b.alpha3 <= b.alpha23 + slack);
    CHECK(b.alpha23 <= b.alpha2 + slack);
    CHECK(b.alpha2 <= b.alpha12 + slack);
    CHECK(b.alpha12 <= b.alpha1 + slack);
  }
  const Breakpoints z = breakpoints(0.0, 1.0);
  CHECK(z.alpha4 == 0.0);
  CHECK(z.alpha4 <= z.alpha3);
  CHECK(z.alpha3 <= z.alpha23);
}

TEST_CASE("classification examples") {
  const ChannelClass d = classify(at(1.2));
  CHECK(d.verdict == Verdict::degraded);
  CHECK(d.stronger == Receiver::first);
  CHECK(d.first.less_noisy);
  CHECK(d.first.more_capable);

  const ChannelClass u = classify(at(0.28));
  CHECK(u.verdict == Verdict::unresolved);
  CHECK_FALSE(u.stronger.has_value());
  CHECK(u.witness.lower == "alpha23");
  CHECK(u.witness.upper == "alpha2");

  const ChannelClass e = classify(at(0.25));
  CHECK(e.verdict == Verdict::effectively_less_noisy);
  CHECK(e.stronger == Receiver::second);
  CHECK(e.second.effectively_less_noisy);
  CHECK_FALSE(e.second.more_capable);
  CHECK_FALSE(e.first.more_capable);
}

TEST_CASE("verdict per breakpoint interval") {
  const Breakpoints b = breakpoints(0.1, 1.0);
  struct Row {
    double alpha;
    Verdict v;
    std::optional<Receiver> r;
  };
  const Row rows[] = {
      {0.0, Verdict::degraded, Receiver::second},
      {0.05, Verdict::less_noisy, Receiver::second},
      {b.alpha4, Verdict::less_noisy, Receiver::second},
      {0.2, Verdict::more_capable, Receiver::second},
      {b.alpha3, Verdict::more_capable, Receiver::second},
      {0.25, Verdict::effectively_less_noisy, Receiver::second},
      {b.alpha23, Verdict::effectively_less_noisy, Receiver::second},
      {0.3, Verdict::unresolved, std::nullopt},
      {b.alpha2, Verdict::more_capable, Receiver::first},
      {0.5, Verdict::more_capable, Receiver::first},
      {b.alpha1, Verdict::less_noisy, Receiver::first},
      {0.8, Verdict::less_noisy, Receiver::first},
      {1.0, Verdict::degraded, Receiver::first},
  };
  for (const Row& row : rows) {
    const ChannelClass c = classify(at(row.alpha));
    CHECK_MESSAGE(c.verdict == row.v, "alpha=", row.alpha);
    CHECK(c.stronger == row.r);
  }
  CHECK(classify(at(0.5)).first.effectively_less_noisy);
  CHECK_FALSE(classify(at(0.43)).first.effectively_less_noisy);
}

TEST_CASE("implication chain") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int eln2_not_mc2 = 0;
  for (int t = 0; t < 2000; ++t) {
    double s1 = 3 * u(rng), s2 = 3 * u(rng);
    if (s1 > s2) std::swap(s1, s2);
    const ChannelClass c = classify(at(1.1 * u(rng), s1, s2));
    for (const Membership* m : {&c.first, &c.second}) {
      if (m->degraded) CHECK(m->less_noisy);
      if (m->less_noisy) CHECK(m->more_capable);
      if (m->less_noisy) CHECK(m->effectively_less_noisy);
      if (m->more_capable) CHECK(c.verdict != Verdict::unresolved);
    }
    if (c.first.effectively_less_noisy) CHECK(c.first.more_capable);
    if (c.second.effectively_less_noisy && !c.second.more_capable) ++eln2_not_mc2;
  }
  CHECK(eln2_not_mc2 > 0);
}

TEST_CASE("swapped labels are mapped back") {
  const ChannelClass c = classify(PbcParams{1.0 / 0.25, 1.0, 0.1, 0.25, false});
  CHECK(c.verdict == Verdict::effectively_less_noisy);
  CHECK(c.stronger == Receiver::first);
  CHECK(c.first.effectively_less_noisy);
  CHECK_FALSE(c.second.effectively_less_noisy);
}

TEST_CASE("effectively less noisy: threshold and envelope routes") {
  const Breakpoints b = breakpoints(0.1, 1.0);
  CHECK(effectively_less_noisy_check(at(b.alpha12)).first);
  CHECK(effectively_less_noisy_check(at(b.alpha12)).agree());
  CHECK(effectively_less_noisy_check(at(b.alpha23)).second);
  CHECK(effectively_less_noisy_check(at(b.alpha23)).agree());
  CHECK(effectively_less_noisy_check(at(0.5 * b.alpha4)).second);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    double s1 = 0.01 + 3 * u(rng), s2 = 0.01 + 3 * u(rng);
    if (s1 > s2) std::swap(s1, s2);
    const EffectivelyLessNoisy e = effectively_less_noisy_check(at(1.1 * u(rng), s1, s2));
    CHECK(e.agree());
  }
  CHECK_THROWS(effectively_less_noisy_check(at(0.3, 1.0, 0.1)));
}

TEST_CASE("stronger condition") {
  const StrongerCondition yes = stronger_condition_check(at(0.28));
  CHECK(yes.holds);
  CHECK_FALSE(yes.inconclusive);
  const StrongerCondition no = stronger_condition_check(at(0.34));
  CHECK_FALSE(no.holds);
  CHECK(no.first.worst_margin < 0.0);
  CHECK(no.second.worst_margin < 0.0);
  CHECK(stronger_condition_check(at(0.5)).holds);
  CHECK(stronger_condition_check(at(0.25)).holds);

  const ChannelClass r = classify_resolved(at(0.28));
  CHECK(r.verdict == Verdict::stronger_condition_optimal);
  CHECK(classify_resolved(at(0.34)).verdict == Verdict::unresolved);
  CHECK(classify_resolved(at(0.25)).verdict == Verdict::effectively_less_noisy);
}

TEST_CASE("stronger condition is thread-count invariant") {
  const StrongerCondition a = stronger_condition_check(at(0.29), 101, 1);
  const StrongerCondition b = stronger_condition_check(at(0.29), 101, 4);
  CHECK(a.holds == b.holds);
  CHECK(a.first.worst_margin == b.first.worst_margin);
  CHECK(a.second.worst_margin == b.second.worst_margin);
  CHECK(a.second.worst_lambda == b.second.worst_lambda);
}

TEST_CASE("average power thresholds") {
  const Breakpoints b = breakpoints(0.1, 1.0);
  const AvgPowerThresholds one = classify_avg_power(at(0.3), 1.0);
  CHECK(one.first_threshold == Approx(b.alpha12).epsilon(1e-14));
  CHECK(one.second_threshold == Approx(b.alpha23).epsilon(1e-14));

  const AvgPowerThresholds q1 = classify_avg_power(at(0.3), optimal_input(0.1));
  CHECK(q1.second_threshold == Approx(b.alpha23).epsilon(1e-14));
  CHECK(std::abs(q1.second_threshold - 0.27) < 0.005);

  const AvgPowerThresholds low = classify_avg_power(at(0.3), 0.2);
  CHECK(low.second_threshold == Approx(oracle::g2_at_02).epsilon(1e-12));
  // g2 increases, so restricting the input lowers the receiver-2 threshold.
  CHECK(low.second_threshold < b.alpha23);
  CHECK(low.first_threshold == Approx(g1(0.2, 0.1, 1.0)).epsilon(1e-14));
  CHECK(low.first_threshold < b.alpha12);
  CHECK(classify_avg_power(at(0.195), 0.2).second);
  CHECK_FALSE(classify_avg_power(at(0.2), 0.2).second);

  CHECK_THROWS(classify_avg_power(at(0.3), 0.0));
  CHECK_THROWS(classify_avg_power(at(0.3), -0.5));
  CHECK_THROWS(classify_avg_power(at(0.3), 1.5));
}

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::effectively_less_noisy) == "effectively-less-noisy");
  CHECK(to_string(Verdict::stronger_condition_optimal) == "stronger-condition-optimal");
}
