#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "urnwalk/tick_ingest.hpp"
#include "urnwalk/urn_core.hpp"

namespace urnwalk {

/// E(eps) = sum_x [P(x) - P(x | eps)]^2 / (2 dP(x)^2) over bins with dP > 0.
/// Throws ParameterError if hist.n_block != N, DataError if no bin has dP > 0.
double discrepancy_hist(const EmpiricalHist& hist, const ProcessParams& params);

/// E'(eps, n) = sum_{l=1}^{L} [C(n,l) - C(n,l | eps)]^2 / (2 dC(n,l)^2).
/// Requires n + L == N (ParameterError), acf.n_base == n, and lags 1..L
/// present with positive errors (DataError).
double discrepancy_acf(const EmpiricalAcf& acf, const ProcessParams& params, int n, int max_lag);

/// Histogram bins that take part in the discrepancy.
struct BinSelection {
    std::vector<std::size_t> included;
    /// Bins with data (p_mean > 0) but zero uncertainty; left out of E.
    std::vector<std::size_t> excluded_with_data;
};
BinSelection select_bins(const EmpiricalHist& hist);

/// A one-dimensional inference problem: the discrepancy E(eps) of some data
/// under the model with N draws. The prior is uniform on [-1/(2N), 1/(2N)].
struct FitTarget {
    int n_total = 0;
    std::function<double(double eps)> discrepancy;
};

FitTarget hist_target(const EmpiricalHist& hist, int n_total);
FitTarget acf_target(const EmpiricalAcf& acf, int n_total, int n, int max_lag);

struct McmcConfig {
    int n_steps = 100000;
    int n_burnin = 10000;
    /// Initial proposal width; defaults to prior width / 20.
    std::optional<double> proposal_std;
    std::uint64_t seed = 1;

    /// Throws ParameterError unless n_steps >= 100, n_burnin >= 0 and any
    /// given proposal_std is positive.
    void validate() const;
};

struct PosteriorSummary {
    int n_total = 0;
    double eps_mean = 0.0;
    double eps_std = 0.0;
    double eps_mean_sem = 0.0;  // batch-means standard error of eps_mean
    double kappa_mean = 0.0;
    double kappa_std = 0.0;
    std::vector<double> samples;
    double acceptance_rate = 0.0;
    bool acceptance_warning = false;  // acceptance_rate outside [0.05, 0.95]
    double proposal_std = 0.0;        // after burn-in adaptation
    double log_evidence = 0.0;        // ln of prior-averaged exp(-E)
    double grid_eps_mean = 0.0;
    double grid_eps_std = 0.0;
    double eps_map = 0.0;             // grid point of smallest E
};

/// Evidence and moments of the posterior from trapezoidal quadrature of
/// exp(-E) on a uniform grid over the prior.
struct GridPosterior {
    double log_evidence = 0.0;
    double eps_mean = 0.0;
    double eps_std = 0.0;
    double eps_map = 0.0;
    double min_discrepancy = 0.0;
};

inline constexpr int kEvidenceGridPoints = 2001;

/// Throws NumericalError when E is not finite anywhere on the grid.
GridPosterior grid_posterior(const FitTarget& target, int points = kEvidenceGridPoints);

/// Random-walk Metropolis over eps with likelihood exp(-E(eps)).
///
/// The chain starts at the grid minimum of E. Proposals leaving the prior
/// interval are reflected back inside. During burn-in the proposal width is
/// rescaled every 100 steps towards 20-50% acceptance; it is frozen for the
/// retained steps. E is memoized on a 10^6-cell partition of the prior and
/// evaluated at cell centres.
PosteriorSummary posterior_mcmc(const FitTarget& target, const McmcConfig& config);
PosteriorSummary posterior_mcmc(const EmpiricalHist& hist, const ProcessParams& params_template,
                                const McmcConfig& config);
PosteriorSummary posterior_mcmc(const EmpiricalAcf& acf, const ProcessParams& params_template,
                                int n, int max_lag, const McmcConfig& config);

/// ln[P(D|M) / P(D|B)] = ln <exp(-E)>_prior + E(0).
double bayes_factor(const FitTarget& target);
double bayes_factor(const EmpiricalHist& hist, const ProcessParams& params_template);
double bayes_factor(const EmpiricalAcf& acf, const ProcessParams& params_template, int n, int max_lag);

}  // namespace urnwalk
