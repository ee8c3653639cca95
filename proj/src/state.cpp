#include "ultrarad/state.hpp"

namespace ultrarad {

namespace {

void require_admissible(const ConservedState& s, const char* what) {
  if (!is_admissible(s)) {
    throw DomainError(std::string(what) + ": state (a=" + std::to_string(s.a) +
                      ", b=" + std::to_string(s.b) + ") violates |b| < a");
  }
}

}  // namespace

ConservedState to_conserved(const PrimitiveState& s) {
  if (!(s.p > 0.0)) throw DomainError("to_conserved: pressure must be positive");
  const double u2 = s.u * s.u;
  return {s.p * (3.0 + 4.0 * u2), 4.0 * s.p * s.u * std::sqrt(1.0 + u2)};
}

PrimitiveState to_primitive(const ConservedState& s) {
  require_admissible(s, "to_primitive");
  const double root = root_term(s.a, s.b);
  const double p = detail::pressure_from(s.a, s.b, root);
  return {p, s.b / std::sqrt(4.0 * p * (p + s.a))};
}

double pressure(const ConservedState& s) {
  require_admissible(s, "pressure");
  return detail::pressure_from(s.a, s.b, root_term(s.a, s.b));
}

double flux_c(const ConservedState& s) {
  require_admissible(s, "flux_c");
  return s.a / 3.0 + detail::flux_excess(s.a, s.b, root_term(s.a, s.b));
}

EntropyPair entropy_pair(const ConservedState& s) {
  const PrimitiveState prim = to_primitive(s);
  // 2^{-7/4} (3a-c)^{1/2} (a-c)^{1/4} with a-c = 2p and 3a-c = 2(a+p).
  const double sum = s.a + prim.p;
  const double density = std::sqrt(std::sqrt(sum * sum * prim.p / 16.0));
  return {density, std::pow(prim.p, 0.75) * prim.u};
}

double three_velocity(double u) { return u / std::sqrt(1.0 + u * u); }

double four_velocity(double v) {
  if (!(std::abs(v) < 1.0)) throw DomainError("four_velocity: |v| must be < 1");
  return v / std::sqrt((1.0 - v) * (1.0 + v));
}

}  // namespace ultrarad
