#pragma once

#include "osn/records.hpp"

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace osn {

/// Logarithmic retweet-growth curve value(t) = a*ln(t + c) + d.
struct LogGrowthFit {
    double a = 0.0; // log stretch, count units
    double c = 1.0; // age shift, hours; always > 0
    double d = 0.0; // count offset
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;

    void validate() const; // throws DataError when c <= 0 or fields non-finite

    bool operator==(const LogGrowthFit&) const = default;
};

struct LsConfig {
    int max_iterations = 200;
    double cost_tolerance = 1e-10; // relative SSE change
    double damping_init = 1e-3;
    double damping_factor = 10.0;
    double c_min = 1e-6;
};

/// The redundant five-parameter form value(t) = k1*log_base(k0*t + k2) + k3.
/// base and k0 are not identifiable (base is absorbed by k1, k0 by k2/k3
/// shifts), so fits use the canonical three-parameter curve and this view
/// pins base=e, k0=1.
struct PaperParams {
    double base, k0, k1, k2, k3;
};

/// Curve value at age t >= 0 hours. May be negative; prediction-level
/// clamping lives in the predictor.
double log_growth_value(const LogGrowthFit& fit, double t);

/// Residuals r_i = count_i - value(t_i) and Jacobian rows
/// (dr/da, dr/dc, dr/dd) = (-ln(t_i+c), -a/(t_i+c), -1).
std::pair<std::vector<double>, std::vector<std::array<double, 3>>>
residuals_and_jacobian(const LogGrowthFit& fit, std::span<const RetweetObservation> series);

/// Damped Gauss-Newton (Levenberg-Marquardt) fit of (a, c, d).
/// Steps solve (J^T J + lambda*diag(J^T J)) delta = -J^T r and are accepted
/// only when the SSE decreases; c is clamped to >= c_min after every step.
/// Needs >= 4 observations with >= 3 distinct non-negative ages.
/// sse_trace, when given, receives the accepted-SSE sequence starting with
/// the initial parameters.
LogGrowthFit fit_log_growth(std::span<const RetweetObservation> series,
                            const LsConfig& config = {},
                            std::vector<double>* sse_trace = nullptr);

PaperParams to_paper_params(const LogGrowthFit& fit);

/// Evaluates the five-parameter form directly (for cross-checking the
/// canonical curve against the PaperParams view).
double paper_form_value(const PaperParams& p, double t);

} // namespace osn
