#include "urnwalk/bayes_infer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "urnwalk/error.hpp"
#include "urnwalk/rng.hpp"
#include "urnwalk/stats.hpp"

namespace urnwalk {

namespace {

constexpr long long kMemoCells = 1000000;
constexpr int kAdaptWindow = 100;
constexpr int kBatches = 50;

double prior_half_width(int n_total) { return 1.0 / (2.0 * n_total); }

void check_acf_window(const EmpiricalAcf& acf, const ProcessParams& params, int n, int max_lag) {
    if (n < 1 || max_lag < 1) throw ParameterError("discrepancy_acf: n and L must be >= 1");
    if (n + max_lag != params.n_total()) {
        throw ParameterError("discrepancy_acf: need n + L = N, got n=" + std::to_string(n) +
                             ", L=" + std::to_string(max_lag) + ", N=" + std::to_string(params.n_total()));
    }
    if (acf.n_base != n) {
        throw ParameterError("discrepancy_acf: data measured at n=" + std::to_string(acf.n_base) +
                             ", fit requested at n=" + std::to_string(n));
    }
    if (acf.max_lag() < max_lag || acf.errors.size() < acf.values.size()) {
        throw DataError("discrepancy_acf: data has lags 1.." + std::to_string(acf.max_lag()) +
                        ", need 1.." + std::to_string(max_lag));
    }
    for (int l = 1; l <= max_lag; ++l) {
        if (!(acf.errors[static_cast<std::size_t>(l - 1)] > 0)) {
            throw DataError("discrepancy_acf: lag " + std::to_string(l) + " has zero uncertainty");
        }
    }
}

}  // namespace

BinSelection select_bins(const EmpiricalHist& hist) {
    BinSelection sel;
    for (std::size_t j = 0; j < hist.p_mean.size(); ++j) {
        if (hist.p_err[j] > 0) {
            sel.included.push_back(j);
        } else if (hist.p_mean[j] > 0) {
            sel.excluded_with_data.push_back(j);
        }
    }
    return sel;
}

namespace {

double hist_energy(const EmpiricalHist& hist, const std::vector<std::size_t>& bins,
                   const ProcessParams& params) {
    const Pmf model = evolve_pmf(params, params.n_total());
    double e = 0.0;
    for (std::size_t j : bins) {
        const double diff = hist.p_mean[j] - model.probs[j];
        e += diff * diff / (2.0 * hist.p_err[j] * hist.p_err[j]);
    }
    return e;
}

std::vector<std::size_t> checked_bins(const EmpiricalHist& hist, int n_total) {
    if (hist.n_block != n_total) {
        throw ParameterError("discrepancy_hist: histogram block length " + std::to_string(hist.n_block) +
                             " does not match N = " + std::to_string(n_total));
    }
    if (hist.p_mean.size() != static_cast<std::size_t>(n_total) + 1 || hist.p_err.size() != hist.p_mean.size()) {
        throw DataError("discrepancy_hist: histogram must have N + 1 bins");
    }
    auto sel = select_bins(hist);
    if (sel.included.empty()) throw DataError("discrepancy_hist: every bin has zero uncertainty");
    return sel.included;
}

}  // namespace

double discrepancy_hist(const EmpiricalHist& hist, const ProcessParams& params) {
    return hist_energy(hist, checked_bins(hist, params.n_total()), params);
}

double discrepancy_acf(const EmpiricalAcf& acf, const ProcessParams& params, int n, int max_lag) {
    check_acf_window(acf, params, n, max_lag);
    double e = 0.0;
    for (int l = 1; l <= max_lag; ++l) {
        const auto k = static_cast<std::size_t>(l - 1);
        const double diff = acf.values[k] - position_acf_model(params, n, l);
        e += diff * diff / (2.0 * acf.errors[k] * acf.errors[k]);
    }
    return e;
}

FitTarget hist_target(const EmpiricalHist& hist, int n_total) {
    auto bins = checked_bins(hist, n_total);
    return FitTarget{n_total, [hist, bins = std::move(bins), n_total](double eps) {
                         return hist_energy(hist, bins, ProcessParams::from_epsilon(n_total, eps));
                     }};
}

FitTarget acf_target(const EmpiricalAcf& acf, int n_total, int n, int max_lag) {
    check_acf_window(acf, ProcessParams(n_total, 0.0), n, max_lag);
    return FitTarget{n_total, [acf, n_total, n, max_lag](double eps) {
                         return discrepancy_acf(acf, ProcessParams::from_epsilon(n_total, eps), n, max_lag);
                     }};
}

void McmcConfig::validate() const {
    if (n_steps < 100) throw ParameterError("mcmc: n_steps must be >= 100");
    if (n_burnin < 0) throw ParameterError("mcmc: n_burnin must be >= 0");
    if (proposal_std && !(*proposal_std > 0)) throw ParameterError("mcmc: proposal_std must be > 0");
}

GridPosterior grid_posterior(const FitTarget& target, int points) {
    if (target.n_total < 1) throw ParameterError("grid_posterior: n_total must be >= 1");
    if (points < 3) throw ParameterError("grid_posterior: need at least 3 grid points");
    const double b = prior_half_width(target.n_total);
    const double h = 2.0 * b / (points - 1);

    std::vector<double> eps(static_cast<std::size_t>(points));
    std::vector<double> log_w(eps.size());
    double best = -std::numeric_limits<double>::infinity();
    GridPosterior out;
    out.min_discrepancy = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const auto k = static_cast<std::size_t>(i);
        eps[k] = i == points - 1 ? b : -b + 2.0 * b * i / (points - 1);
        const double e = target.discrepancy(eps[k]);
        const double trapezoid = (i == 0 || i == points - 1) ? 0.5 * h : h;
        log_w[k] = std::isfinite(e) ? std::log(trapezoid) - e : -std::numeric_limits<double>::infinity();
        if (std::isfinite(e) && e < out.min_discrepancy) {
            out.min_discrepancy = e;
            out.eps_map = eps[k];
        }
        best = std::max(best, log_w[k]);
    }
    if (!std::isfinite(best)) {
        throw NumericalError("grid_posterior: likelihood vanishes on the whole prior interval");
    }

    long double z = 0, m1 = 0, m2 = 0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const long double w = std::exp(static_cast<long double>(log_w[k] - best));
        z += w;
        m1 += w * eps[k];
        m2 += w * eps[k] * eps[k];
    }
    out.log_evidence = static_cast<double>(best + std::log(z)) - std::log(2.0 * b);
    out.eps_mean = static_cast<double>(m1 / z);
    out.eps_std = static_cast<double>(std::sqrt(std::max<long double>(0, m2 / z - (m1 / z) * (m1 / z))));
    return out;
}

PosteriorSummary posterior_mcmc(const FitTarget& target, const McmcConfig& config) {
    config.validate();
    const GridPosterior grid = grid_posterior(target);
    const double b = prior_half_width(target.n_total);
    const double cell = 2.0 * b / kMemoCells;

    std::unordered_map<long long, double> memo;
    auto energy = [&](double eps) {
        const long long c = std::clamp(static_cast<long long>(std::floor((eps + b) / cell)), 0LL, kMemoCells - 1);
        if (auto it = memo.find(c); it != memo.end()) return it->second;
        const double e = target.discrepancy(-b + (static_cast<double>(c) + 0.5) * cell);
        memo.emplace(c, e);
        return e;
    };

    rng::Xoshiro256 gen(config.seed);
    double sigma = std::min(config.proposal_std.value_or(2.0 * b / 20.0), 2.0 * b);
    double x = std::clamp(grid.eps_map, -b + 0.5 * cell, b - 0.5 * cell);
    double ex = energy(x);

    auto step = [&]() {
        double y = x + sigma * gen.normal();
        while (y > b || y < -b) y = y > b ? 2.0 * b - y : -2.0 * b - y;
        if (y == b || y == -b) return false;
        const double ey = energy(y);
        if (!std::isfinite(ey)) return false;
        const double u = 1.0 - gen.uniform();  // (0, 1]
        if (std::log(u) < ex - ey) {
            x = y;
            ex = ey;
            return true;
        }
        return false;
    };

    int window_accepts = 0;
    for (int i = 1; i <= config.n_burnin; ++i) {
        window_accepts += step() ? 1 : 0;
        if (i % kAdaptWindow == 0) {
            const double rate = static_cast<double>(window_accepts) / kAdaptWindow;
            if (rate < 0.2) sigma *= 0.6;
            else if (rate > 0.5) sigma = std::min(sigma * 1.5, 2.0 * b);
            window_accepts = 0;
        }
    }

    PosteriorSummary out;
    out.n_total = target.n_total;
    out.samples.reserve(static_cast<std::size_t>(config.n_steps));
    long long accepted = 0;
    for (int i = 0; i < config.n_steps; ++i) {
        accepted += step() ? 1 : 0;
        out.samples.push_back(x);
    }

    long double m1 = 0, m2 = 0;
    for (double s : out.samples) {
        m1 += s;
        m2 += static_cast<long double>(s) * s;
    }
    const auto count = static_cast<long double>(out.samples.size());
    out.eps_mean = static_cast<double>(m1 / count);
    out.eps_std = static_cast<double>(std::sqrt(std::max<long double>(0, m2 / count - (m1 / count) * (m1 / count))));

    // Batch means.
    const std::size_t batch = out.samples.size() / kBatches;
    std::vector<double> means(kBatches);
    for (int k = 0; k < kBatches; ++k) {
        long double s = 0;
        for (std::size_t i = k * batch; i < (k + 1) * batch; ++i) s += out.samples[i];
        means[static_cast<std::size_t>(k)] = static_cast<double>(s / batch);
    }
    out.eps_mean_sem = subensemble_error(means);

    out.kappa_mean = out.eps_mean * target.n_total;
    out.kappa_std = out.eps_std * target.n_total;
    out.acceptance_rate = static_cast<double>(accepted) / config.n_steps;
    out.acceptance_warning = out.acceptance_rate < 0.05 || out.acceptance_rate > 0.95;
    out.proposal_std = sigma;
    out.log_evidence = grid.log_evidence;
    out.grid_eps_mean = grid.eps_mean;
    out.grid_eps_std = grid.eps_std;
    out.eps_map = grid.eps_map;
    return out;
}

PosteriorSummary posterior_mcmc(const EmpiricalHist& hist, const ProcessParams& params_template,
                                const McmcConfig& config) {
    return posterior_mcmc(hist_target(hist, params_template.n_total()), config);
}

PosteriorSummary posterior_mcmc(const EmpiricalAcf& acf, const ProcessParams& params_template,
                                int n, int max_lag, const McmcConfig& config) {
    return posterior_mcmc(acf_target(acf, params_template.n_total(), n, max_lag), config);
}

double bayes_factor(const FitTarget& target) {
    return grid_posterior(target).log_evidence + target.discrepancy(0.0);
}

double bayes_factor(const EmpiricalHist& hist, const ProcessParams& params_template) {
    return bayes_factor(hist_target(hist, params_template.n_total()));
}

double bayes_factor(const EmpiricalAcf& acf, const ProcessParams& params_template, int n, int max_lag) {
    return bayes_factor(acf_target(acf, params_template.n_total(), n, max_lag));
}

}  // namespace urnwalk
