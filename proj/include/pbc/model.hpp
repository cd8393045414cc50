#pragma once

#include <stdexcept>

namespace pbc {

enum class Receiver { first = 1, second = 2 };

inline Receiver other(Receiver r) { return r == Receiver::first ? Receiver::second : Receiver::first; }
inline int index(Receiver r) { return static_cast<int>(r); }

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Channel gains A1 = alpha * scale, A2 = scale; dark currents s1, s2.
struct PbcParams {
  double alpha = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double scale = 1.0;
  bool swapped = false;  // true when receiver labels were exchanged to reach s1 <= s2

  void validate() const;
  bool is_canonical() const { return s1 <= s2; }

  // Receiver index in the caller's original labelling.
  Receiver original(Receiver r) const { return swapped ? other(r) : r; }

  // Reorders so that s1 <= s2, normalizing the gains accordingly.
  static PbcParams canonical(double alpha, double s1, double s2, double scale = 1.0);
  static PbcParams from_gains(double a1, double a2, double s1, double s2);
};

double xlogx(double x);

double mutual_info_rate(Receiver which, double q, const PbcParams& p);

// Maximizer of the single-receiver rate for dark current s.
double optimal_input(double s);
double optimal_input(Receiver which, const PbcParams& p);

double capacity(Receiver which, const PbcParams& p);

struct Derivatives {
  double first;
  double second;
};

Derivatives mutual_info_derivs(Receiver which, double q, const PbcParams& p);

// Difference of second derivatives I2'' - I1'' in closed form.
double second_derivative_gap(double q, const PbcParams& p);

// Slot-quantized binary channel: P(Y=1|X=0) = a, P(Y=1|X=1) = b.
struct BinaryApprox {
  double delta;
  double a1, a2, b1, b2;
};

BinaryApprox binary_approx(const PbcParams& p, double delta);

// Exact I(X;Y_i) / delta for X ~ Bern(q) over the quantized channel.
double binary_mutual_info_rate(const BinaryApprox& b, Receiver which, double q);

}  // namespace pbc
