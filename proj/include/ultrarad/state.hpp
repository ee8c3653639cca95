#ifndef ULTRARAD_STATE_HPP
#define ULTRARAD_STATE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace ultrarad {

/// Thrown when a state leaves its admissible set (p <= 0, |b| >= a, |v| >= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physical variables: pressure and radial component of the four-velocity.
struct PrimitiveState {
  double p = 1.0;
  double u = 0.0;
};

/// Energy-like density a and momentum-like density b, admissible iff |b| < a.
struct ConservedState {
  double a = 3.0;
  double b = 0.0;

  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

struct EntropyPair {
  double density = 0.0;
  double flux = 0.0;
};

inline bool is_admissible(const ConservedState& s) { return std::abs(s.b) < s.a; }

/// sqrt(4a^2 - 3b^2). A radicand that is negative by less than 1e-14 a^2 is
/// rounding dust at |b| -> a and is clamped; anything larger is an error.
inline double root_term(double a, double b) {
  const double r = 4.0 * a * a - 3.0 * b * b;
  if (r >= 0.0) return std::sqrt(r);
  if (r > -1e-14 * a * a) return 0.0;
  throw DomainError("radicand 4a^2-3b^2 is negative");
}

ConservedState to_conserved(const PrimitiveState& s);
PrimitiveState to_primitive(const ConservedState& s);

/// Momentum flux c(a,b) = p(1+4u^2).
double flux_c(const ConservedState& s);

/// Entropy density p^{3/4} sqrt(1+u^2) and flux p^{3/4} u.
EntropyPair entropy_pair(const ConservedState& s);

double three_velocity(double u);
double four_velocity(double v);

/// Pressure only; cheaper than a full to_primitive.
double pressure(const ConservedState& s);

namespace detail {

// c - a/3 = 2b^2 / (2a + sqrt(4a^2-3b^2)); vanishes identically at b = 0.
inline double flux_excess(double a, double b, double root) {
  return 2.0 * b * b / (2.0 * a + root);
}

// p = (a^2 - b^2) / (sqrt(4a^2-3b^2) + a), positive whenever |b| < a.
inline double pressure_from(double a, double b, double root) {
  return (a - b) * (a + b) / (root + a);
}

}  // namespace detail

}  // namespace ultrarad

#endif  // ULTRARAD_STATE_HPP
