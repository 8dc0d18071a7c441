#include "adrec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace adrec {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
    if (!(rel_tol > 0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }
    result_gauss *= h;
    result_kronrod *= h;
    double err = std::abs(result_kronrod - result_gauss);
    // the usual (200|dK|)^1.5 sharpening
    if (err > 0) err = std::min(err, std::pow(200.0 * err, 1.5));
    return {result_kronrod, err};
}

// Adaptive bisection on [a, b].  Decrements `budget` per panel evaluated.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, int& budget, double& err_out) {
    struct Seg {
        double a, b, value, error;
    };
    PanelResult first = gk15(f, a, b);
    --budget;
    std::vector<Seg> segs{{a, b, first.value, first.error}};
    double total_err = first.error;
    while (total_err > tol && budget > 0) {
        // split the worst segment
        size_t worst = 0;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        Seg s = segs[worst];
        if (s.b - s.a < 1e-14 * (std::abs(s.a) + 1.0)) break;  // cannot refine further
        const double mid = 0.5 * (s.a + s.b);
        PanelResult left = gk15(f, s.a, mid);
        PanelResult right = gk15(f, mid, s.b);
        budget -= 2;
        segs[worst] = {s.a, mid, left.value, left.error};
        segs.push_back({mid, s.b, right.value, right.error});
        total_err += left.error + right.error - s.error;
    }
    double total = 0;
    for (const Seg& s : segs) total += s.value;
    err_out = total_err;
    return total;
}

// Wynn epsilon table, diagonal form.  Returns the current best even-column
// entry after appending a new partial sum.
class EpsilonTable {
public:
    double append(double s) {
        std::vector<double> next(prev_.size() + 1);
        next[0] = s;
        for (size_t j = 1; j < next.size(); ++j) {
            const double denom = next[j - 1] - prev_[j - 1];
            if (std::abs(denom) < 1e-300) {
                // exact repetition: the sequence has converged
                next[j] = next[j - 1];
            } else {
                next[j] = (j >= 2 ? prev_[j - 2] : 0.0) + 1.0 / denom;
            }
        }
        // cap the diagonal depth: deep epsilon columns only accumulate
        // roundoff once the sequence has effectively converged
        if (next.size() > 40) next.resize(40);
        prev_ = std::move(next);
        size_t best = prev_.size() - 1;
        if (best % 2 == 1) --best;
        return prev_[best];
    }

private:
    std::vector<double> prev_;
};

}  // namespace

double integrate_oscillatory(const std::function<double(double)>& f,
                             const QuadratureSpec& spec, double window_hint) {
    spec.validate();
    double window = window_hint > 0 ? window_hint : 1.0;
    if (!std::isfinite(window)) window = 1.0;

    int budget = spec.max_subdivisions;
    const double panel_tol = spec.abs_tol * 0.05;

    // head panel [0, window] under w = u^2
    const double su = std::sqrt(window);
    double err = 0;
    double head = adaptive([&f](double u) { return 2.0 * u * f(u * u); }, 0.0, su,
                           panel_tol, budget, err);

    double sum = head;
    EpsilonTable eps;
    double accel = eps.append(sum);
    double prev_accel = accel;
    double prev_window_abs = std::abs(head);
    int calm = 0;

    const bool use_accel = spec.truncation == TruncationStrategy::tail_estimate;
    double best = sum;

    for (long k = 1; budget > 0; ++k) {
        const double a = window * static_cast<double>(k);
        const double b = a + window;
        double werr = 0;
        const double s = adaptive(f, a, b, panel_tol, budget, werr);
        sum += s;
        accel = eps.append(sum);
        best = use_accel ? accel : sum;

        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(best));
        const bool tail_small = std::abs(s) + prev_window_abs < 0.5 * tol;
        const bool accel_calm = use_accel && std::abs(accel - prev_accel) < 0.5 * tol;
        if (tail_small || accel_calm)
            ++calm;
        else
            calm = 0;
        if (calm >= 2 && k >= 4) return tail_small && !use_accel ? sum : best;

        prev_window_abs = std::abs(s);
        prev_accel = accel;
    }
    throw ConvergenceError("integrate_oscillatory: panel budget exhausted", best,
                           std::abs(best - prev_accel) + prev_window_abs);
}

}  // namespace adrec
