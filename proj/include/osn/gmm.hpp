#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace osn {

/// Two-component Gaussian mixture over time-of-day hours.
/// Components are kept sorted (mu1 <= mu2); weights sum to 1.
struct GmmFit {
    double w1 = 0.5;
    double w2 = 0.5;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    std::int64_t n_events = 0;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;

    /// Throws DataError when the mixture invariants are violated
    /// (weights not summing to 1, weights outside (0,1), non-positive sigma).
    void validate() const;

    bool operator==(const GmmFit&) const = default;
};

struct EmConfig {
    int max_iterations = 500;
    double tolerance = 1e-8;  // absolute change in mean log-likelihood per sample
    double sigma_floor = 0.05; // hours
};

double normal_pdf(double x, double mean, double stddev);
double normal_cdf(double x, double mean, double stddev);

/// Mixture density w1*N(x;mu1,sigma1) + w2*N(x;mu2,sigma2).
/// Expected histogram height at a bin is n_events * binwidth * density.
double gmm_density(const GmmFit& fit, double x);

/// Total log-likelihood of samples under fit.
double gmm_log_likelihood(const GmmFit& fit, std::span<const double> samples);

/// Posterior component probabilities, one row per sample, rows sum to 1.
/// Computed in the log domain (log-sum-exp) so tail samples do not underflow.
std::vector<std::array<double, 2>> responsibilities(const GmmFit& fit,
                                                    std::span<const double> samples);

/// One EM iteration. Returns the updated parameters together with the
/// log-likelihood of the INPUT parameters on the samples.
/// Requires at least two distinct sample values.
std::pair<GmmFit, double> em_step(const GmmFit& fit, std::span<const double> samples,
                                  const EmConfig& config = {});

/// Fits the two-component mixture by EM with deterministic initialization
/// (means at the 25th/75th sample percentiles, both sigmas at half the
/// sample stddev, equal weights). Components are sorted on return.
/// ll_trace, when given, receives the per-iteration log-likelihood sequence
/// starting with the initial parameters.
GmmFit fit_gmm(std::span<const double> samples, const EmConfig& config = {},
               std::vector<double>* ll_trace = nullptr);

} // namespace osn
