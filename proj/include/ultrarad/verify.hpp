#ifndef ULTRARAD_VERIFY_HPP
#define ULTRARAD_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ultrarad::verify {

/// Outcome of one randomized or deterministic property check.
/// worst_margin is the smallest slack seen (negative means violated) for
/// inequality properties, and the largest error for tolerance checks.
struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  double worst_margin = 0.0;
  bool passed = false;
};

std::vector<PropertyResult> lemma_suite(std::uint64_t seed = 20240601);
std::vector<PropertyResult> stationary_suite();
std::vector<PropertyResult> linear_suite();

/// L1 distance, normalized by the perturbation size, between a scheme run on
/// a 1e-3 bump over a rest state and the linearized solution at t = 0.25.
double linear_regime_error(int N);

/// "lemmas", "stationary", "linear" or "all". Throws std::invalid_argument
/// for anything else.
std::vector<PropertyResult> run_suite(std::string_view name);

/// One line per property: name trials worst_margin PASS|FAIL.
void write_report(const std::vector<PropertyResult>& results, std::ostream& out);

bool all_passed(const std::vector<PropertyResult>& results);

/// b solving b = xi + eta sqrt(4a^2 - 3b^2) on (-a, a) by bisection, valid
/// for 0 <= eta <= 1/3 where the residual is monotone.
double bisect_momentum(double a, double xi, double eta);

}  // namespace ultrarad::verify

#endif  // ULTRARAD_VERIFY_HPP
