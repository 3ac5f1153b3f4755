#include "osn/loggrowth.hpp"

#include "osn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace osn {

namespace {

// Solves the 3x3 system A x = b in place, partial pivoting.
// Returns false when a pivot vanishes.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& x) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < 3; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = b[row];
        for (int k = row + 1; k < 3; ++k) s -= a[row][k] * x[k];
        x[row] = s / a[row][row];
    }
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

double sum_squares(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

double sse_at(const LogGrowthFit& p, std::span<const RetweetObservation> series) {
    double s = 0.0;
    for (const auto& obs : series) {
        const double r = obs.count - (p.a * std::log(obs.age_hours + p.c) + p.d);
        s += r * r;
    }
    return s;
}

LogGrowthFit initial_guess(std::span<const RetweetObservation> series) {
    LogGrowthFit p;
    p.c = 1.0;
    p.d = series.front().count; // count at the smallest age (series is sorted)

    // OLS slope of count on ln(age+1).
    const double n = static_cast<double>(series.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& obs : series) {
        const double x = std::log(obs.age_hours + 1.0);
        sx += x;
        sy += obs.count;
        sxx += x * x;
        sxy += x * obs.count;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom > 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    p.a = std::max(slope, 1e-3);
    return p;
}

} // namespace

void LogGrowthFit::validate() const {
    if (!(c > 0.0))
        throw DataError("invalid growth fit: c must be positive");
    if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(d))
        throw DataError("invalid growth fit: non-finite parameter");
}

double log_growth_value(const LogGrowthFit& fit, double t) {
    if (t < 0.0)
        throw std::domain_error("log_growth_value: age must be non-negative");
    return fit.a * std::log(t + fit.c) + fit.d;
}

std::pair<std::vector<double>, std::vector<std::array<double, 3>>>
residuals_and_jacobian(const LogGrowthFit& fit, std::span<const RetweetObservation> series) {
    if (series.empty())
        throw DataError("residuals_and_jacobian: empty series");

    std::vector<double> r;
    std::vector<std::array<double, 3>> jac;
    r.reserve(series.size());
    jac.reserve(series.size());
    for (const auto& obs : series) {
        const double shifted = obs.age_hours + fit.c;
        if (!(shifted > 0.0))
            throw std::domain_error("residuals_and_jacobian: age + c must be positive");
        const double lt = std::log(shifted);
        r.push_back(obs.count - (fit.a * lt + fit.d));
        jac.push_back({-lt, -fit.a / shifted, -1.0});
    }
    return {std::move(r), std::move(jac)};
}

LogGrowthFit fit_log_growth(std::span<const RetweetObservation> series,
                            const LsConfig& config, std::vector<double>* sse_trace) {
    if (series.size() < 4)
        throw DataError("fit_log_growth: need at least 4 observations");

    // Canonical order makes the fit independent of input permutation.
    std::vector<RetweetObservation> obs(series.begin(), series.end());
    std::stable_sort(obs.begin(), obs.end(), [](const auto& a, const auto& b) {
        return a.age_hours != b.age_hours ? a.age_hours < b.age_hours : a.count < b.count;
    });

    std::set<double> distinct;
    for (const auto& o : obs) {
        if (o.age_hours < 0.0)
            throw DataError("fit_log_growth: negative age");
        distinct.insert(o.age_hours);
    }
    if (distinct.size() < 3)
        throw DataError("fit_log_growth: need at least 3 distinct ages");

    LogGrowthFit p = initial_guess(obs);

    auto [r, jac] = residuals_and_jacobian(p, obs);
    double sse = sum_squares(r);
    if (!std::isfinite(sse))
        throw NumericalError("fit_log_growth: non-finite cost at initial guess", 0);

    if (sse_trace) {
        sse_trace->clear();
        sse_trace->push_back(sse);
    }

    double lambda = config.damping_init;
    constexpr double kLambdaMax = 1e12;

    int it = 0;
    bool converged = false;
    while (it < config.max_iterations) {
        ++it;

        std::array<std::array<double, 3>, 3> h{};
        std::array<double, 3> g{};
        for (size_t i = 0; i < r.size(); ++i) {
            for (int a = 0; a < 3; ++a) {
                g[a] += jac[i][a] * r[i];
                for (int b = a; b < 3; ++b) h[a][b] += jac[i][a] * jac[i][b];
            }
        }
        h[1][0] = h[0][1];
        h[2][0] = h[0][2];
        h[2][1] = h[1][2];
        if (!std::isfinite(g[0]) || !std::isfinite(g[1]) || !std::isfinite(g[2]))
            throw NumericalError("fit_log_growth: non-finite gradient", it);

        // Inner damping loop: grow lambda until a step lowers the SSE.
        bool accepted = false;
        LogGrowthFit cand;
        double cand_sse = sse;
        while (lambda <= kLambdaMax) {
            auto damped = h;
            for (int a = 0; a < 3; ++a)
                damped[a][a] += lambda * std::max(h[a][a], 1e-12);

            std::array<double, 3> delta{};
            if (solve3(damped, {-g[0], -g[1], -g[2]}, delta)) {
                cand = p;
                cand.a += delta[0];
                cand.c = std::max(cand.c + delta[1], config.c_min);
                cand.d += delta[2];
                cand_sse = sse_at(cand, obs);
                if (std::isfinite(cand_sse) && cand_sse < sse) {
                    accepted = true;
                    break;
                }
            }
            lambda *= config.damping_factor;
        }

        if (!accepted) {
            // No descent direction left; treat as a stationary point.
            converged = true;
            break;
        }

        const double rel_change = (sse - cand_sse) / std::max(sse, 1e-300);
        p = cand;
        sse = cand_sse;
        lambda = std::max(lambda / config.damping_factor, 1e-15);
        if (sse_trace) sse_trace->push_back(sse);

        std::tie(r, jac) = residuals_and_jacobian(p, obs);

        if (rel_change < config.cost_tolerance) {
            converged = true;
            break;
        }
    }

    p.sse = sse;
    p.iterations = it;
    p.converged = converged;
    return p;
}

PaperParams to_paper_params(const LogGrowthFit& fit) {
    return {2.71828182845904523536, 1.0, fit.a, fit.c, fit.d};
}

double paper_form_value(const PaperParams& p, double t) {
    return p.k1 * (std::log(p.k0 * t + p.k2) / std::log(p.base)) + p.k3;
}

} // namespace osn
