#pragma once

#include <optional>
#include <string>

#include "pbc/envelope.hpp"
#include "pbc/model.hpp"

namespace pbc {

struct Breakpoints {
  double alpha4 = 1.0;
  double alpha3 = 1.0;
  double alpha23 = 1.0;
  double alpha2 = 1.0;
  double alpha12 = 1.0;
  double alpha1 = 1.0;
};

Breakpoints breakpoints(double s1, double s2);

enum class Verdict {
  degraded,
  less_noisy,
  more_capable,
  effectively_less_noisy,
  stronger_condition_optimal,
  unresolved,
};

std::string to_string(Verdict v);

struct Membership {
  bool degraded = false;
  bool less_noisy = false;
  bool more_capable = false;
  bool effectively_less_noisy = false;
};

// Breakpoint interval holding alpha, e.g. ("alpha23", "alpha2").
struct Interval {
  std::string lower;
  std::string upper;
  double lo;
  double hi;
};

struct ChannelClass {
  Verdict verdict = Verdict::unresolved;
  std::optional<Receiver> stronger;  // in the caller's receiver labels
  Interval witness;
  Membership first;   // receiver 1 stronger than receiver 2, caller's labels
  Membership second;  // receiver 2 stronger than receiver 1, caller's labels
  bool inconclusive = false;

  const Membership& of(Receiver r) const { return r == Receiver::first ? first : second; }
};

// Classification from breakpoint comparisons alone.
ChannelClass classify(const PbcParams& p);

struct EffectivelyLessNoisy {
  bool first = false;   // receiver 1 effectively less noisy than receiver 2
  bool second = false;  // receiver 2 effectively less noisy than receiver 1
  bool first_by_envelope = false;
  bool second_by_envelope = false;
  bool agree() const { return first == first_by_envelope && second == second_by_envelope; }
};

// Canonical labels. Threshold route and direct envelope comparison on the
// maximizer interval are both evaluated.
EffectivelyLessNoisy effectively_less_noisy_check(const PbcParams& p);

struct StrongerConditionOrientation {
  bool holds = false;
  double worst_margin = 0.0;
  double worst_lambda = 0.0;
  int flat_maximizers = 0;  // lambdas where the objective is flat around the maximizer
};

struct StrongerCondition {
  bool holds = false;
  bool inconclusive = false;
  std::optional<Receiver> receiver;  // canonical label of the orientation that holds
  StrongerConditionOrientation first;
  StrongerConditionOrientation second;
};

StrongerConditionOrientation stronger_condition_orientation(const PbcParams& p, Receiver stronger,
                                                            int lambda_grid_size = 201, unsigned threads = 1);
StrongerCondition stronger_condition_check(const PbcParams& p, int lambda_grid_size = 201, unsigned threads = 1);

// Classification with the unresolved band settled by the stronger condition.
ChannelClass classify_resolved(const PbcParams& p, int lambda_grid_size = 201, unsigned threads = 1);

struct AvgPowerThresholds {
  double sigma;
  double first_threshold;   // receiver 1 effectively less noisy iff alpha >= this
  double second_threshold;  // receiver 2 effectively less noisy iff alpha <= this
  bool first = false;
  bool second = false;
};

AvgPowerThresholds classify_avg_power(const PbcParams& p, double sigma);

}  // namespace pbc
