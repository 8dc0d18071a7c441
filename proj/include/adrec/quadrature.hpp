#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace adrec {

enum class TruncationStrategy {
    fixed_upper_limit,  // plain tail: stop only when window sums are negligible
    tail_estimate       // Wynn-epsilon extrapolation of the partial sums
};

struct QuadratureSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_subdivisions = 20000;  // total Gauss-Kronrod panel budget
    TruncationStrategy truncation = TruncationStrategy::tail_estimate;

    void validate() const;
};

// Thrown when the tail of a semi-infinite integral refuses to settle within
// the panel budget; carries the best estimate seen so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double residual)
        : std::runtime_error(what), best_estimate(best), residual_bound(residual) {}
    double best_estimate;
    double residual_bound;
};

// Improper integral of f over (0, inf) for integrands that decay, or
// oscillate with a decaying envelope.  Integrable w^(-1/2)-type behaviour at
// the origin is allowed: the first panel is evaluated under w = u^2, so the
// head is integrated exactly and f is never called at 0.
//
// window_hint: length of the tail panels, ideally half the oscillation
// period (pi/T for integrands carrying sin(wT)/cos(wT)).  0 picks a default.
double integrate_oscillatory(const std::function<double(double)>& f,
                             const QuadratureSpec& spec,
                             double window_hint = 0.0);

}  // namespace adrec
