#include "osn/gmm.hpp"

#include "osn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace osn {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178; // 0.5*ln(2*pi)

double log_normal_pdf(double x, double mean, double stddev) {
    const double z = (x - mean) / stddev;
    return -kHalfLog2Pi - std::log(stddev) - 0.5 * z * z;
}

// Per-sample log density of the two weighted components plus their
// log-sum-exp (the sample's mixture log density).
struct LogPosterior {
    double lp1, lp2, lse;
};

LogPosterior log_posterior(const GmmFit& f, double x) {
    const double a = std::log(f.w1) + log_normal_pdf(x, f.mu1, f.sigma1);
    const double b = std::log(f.w2) + log_normal_pdf(x, f.mu2, f.sigma2);
    const double m = std::max(a, b);
    return {a, b, m + std::log(std::exp(a - m) + std::exp(b - m))};
}

void require_two_distinct(std::span<const double> samples) {
    if (samples.size() < 2)
        throw DataError("degenerate data: need at least 2 samples");
    const double first = samples.front();
    const bool distinct = std::any_of(samples.begin(), samples.end(),
                                      [&](double v) { return v != first; });
    if (!distinct)
        throw DataError("degenerate data: all sample values are identical");
}

double percentile(std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void sort_components(GmmFit& f) {
    if (f.mu1 > f.mu2) {
        std::swap(f.mu1, f.mu2);
        std::swap(f.sigma1, f.sigma2);
        std::swap(f.w1, f.w2);
    }
}

} // namespace

void GmmFit::validate() const {
    if (!(std::abs(w1 + w2 - 1.0) <= 1e-12))
        throw DataError("invalid mixture: weights do not sum to 1");
    if (!(w1 > 0.0 && w1 < 1.0 && w2 > 0.0 && w2 < 1.0))
        throw DataError("invalid mixture: weights must lie in (0,1)");
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
        throw DataError("invalid mixture: non-positive stddev");
    if (!std::isfinite(mu1) || !std::isfinite(mu2))
        throw DataError("invalid mixture: non-finite mean");
}

double normal_pdf(double x, double mean, double stddev) {
    return std::exp(log_normal_pdf(x, mean, stddev));
}

double normal_cdf(double x, double mean, double stddev) {
    return 0.5 * std::erfc(-(x - mean) / (stddev * 1.4142135623730950488));
}

double gmm_density(const GmmFit& fit, double x) {
    return fit.w1 * normal_pdf(x, fit.mu1, fit.sigma1) +
           fit.w2 * normal_pdf(x, fit.mu2, fit.sigma2);
}

double gmm_log_likelihood(const GmmFit& fit, std::span<const double> samples) {
    double ll = 0.0;
    for (double x : samples) ll += log_posterior(fit, x).lse;
    return ll;
}

std::vector<std::array<double, 2>> responsibilities(const GmmFit& fit,
                                                    std::span<const double> samples) {
    std::vector<std::array<double, 2>> r;
    r.reserve(samples.size());
    for (double x : samples) {
        const LogPosterior lp = log_posterior(fit, x);
        r.push_back({std::exp(lp.lp1 - lp.lse), std::exp(lp.lp2 - lp.lse)});
    }
    return r;
}

std::pair<GmmFit, double> em_step(const GmmFit& fit, std::span<const double> samples,
                                  const EmConfig& config) {
    require_two_distinct(samples);

    const size_t n = samples.size();
    double ll = 0.0;
    double n1 = 0.0, n2 = 0.0;
    double sx1 = 0.0, sx2 = 0.0;
    std::vector<std::array<double, 2>> resp;
    resp.reserve(n);

    for (double x : samples) {
        const LogPosterior lp = log_posterior(fit, x);
        ll += lp.lse;
        const double r1 = std::exp(lp.lp1 - lp.lse);
        const double r2 = std::exp(lp.lp2 - lp.lse);
        resp.push_back({r1, r2});
        n1 += r1;
        n2 += r2;
        sx1 += r1 * x;
        sx2 += r2 * x;
    }

    GmmFit next = fit;
    next.w1 = n1 / static_cast<double>(n);
    next.w2 = n2 / static_cast<double>(n);
    next.mu1 = sx1 / n1;
    next.mu2 = sx2 / n2;

    double v1 = 0.0, v2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d1 = samples[i] - next.mu1;
        const double d2 = samples[i] - next.mu2;
        v1 += resp[i][0] * d1 * d1;
        v2 += resp[i][1] * d2 * d2;
    }
    next.sigma1 = std::max(std::sqrt(v1 / n1), config.sigma_floor);
    next.sigma2 = std::max(std::sqrt(v2 / n2), config.sigma_floor);

    return {next, ll};
}

GmmFit fit_gmm(std::span<const double> samples, const EmConfig& config,
               std::vector<double>* ll_trace) {
    if (samples.size() < 10)
        throw DataError("degenerate data: need at least 10 samples to fit");
    require_two_distinct(samples);

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    double var = 0.0;
    for (double x : sorted) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / n);

    GmmFit fit;
    fit.w1 = fit.w2 = 0.5;
    fit.mu1 = percentile(sorted, 0.25);
    fit.mu2 = percentile(sorted, 0.75);
    fit.sigma1 = fit.sigma2 = std::max(sd / 2.0, config.sigma_floor);
    fit.n_events = static_cast<std::int64_t>(sorted.size());

    if (ll_trace) ll_trace->clear();
    double ll_curr = gmm_log_likelihood(fit, samples);
    if (ll_trace) ll_trace->push_back(ll_curr);

    int it = 0;
    bool converged = false;
    while (it < config.max_iterations) {
        fit = em_step(fit, samples, config).first;
        ++it;
        const double ll_next = gmm_log_likelihood(fit, samples);
        if (ll_trace) ll_trace->push_back(ll_next);
        if (std::abs(ll_next - ll_curr) / n < config.tolerance) {
            ll_curr = ll_next;
            converged = true;
            break;
        }
        ll_curr = ll_next;
    }

    sort_components(fit);
    fit.n_events = static_cast<std::int64_t>(sorted.size());
    fit.log_likelihood = ll_curr;
    fit.iterations = it;
    fit.converged = converged;
    return fit;
}

} // namespace osn
