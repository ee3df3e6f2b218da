#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "urnwalk/stats.hpp"
#include "urnwalk/urn_core.hpp"

namespace urnwalk {

/// One realization of the walk. positions[m] is x_{m+1}.
struct PathSample {
    std::vector<std::int8_t> displacements;
    std::vector<std::int32_t> positions;
};

/// Base step n and lag range 1..max_lag for the auto-correlation estimators.
struct AcfSpec {
    int n = 1;
    int max_lag = 1;
};

struct EnsembleStats {
    int n_total = 0;
    double kappa = 0.0;
    int n_paths = 0;
    int n_subensembles = 0;
    Estimate variance;       // <x_N^2>
    Estimate fourth_moment;  // <x_N^4>
    Estimate kurtosis;       // mean over sub-ensembles of <x^4> / <x^2>^2
    std::optional<AcfSpec> acf;
    std::vector<Estimate> displacement_acf;  // [l-1]: <dx_n dx_{n+l}>
    std::vector<Estimate> position_acf;      // [l-1]: <x_n x_{n+l}> / sqrt(<x_n^2><x_{n+l}^2>)
};

/// Thread count from URNWALK_THREADS, else std::thread::hardware_concurrency().
unsigned default_thread_count();

/// Samples one path: at position x the next draw is +1 with probability
/// 1/2 + x eps. Deterministic in (params, seed).
PathSample sample_path(const ProcessParams& params, std::uint64_t seed);

/// Number of disjoint sub-ensembles used for error bars: 100, or 10 when
/// fewer than 200 samples are available (never more than the sample count).
int subensemble_count(std::size_t n_samples);

/// Runs n_paths independent paths; path i draws from substream
/// rng::derive_seed(seed, i), so the result does not depend on `threads`.
/// Throws ParameterError if n_paths < 2 or the ACF window exceeds N.
EnsembleStats run_ensemble(const ProcessParams& params, int n_paths, std::uint64_t seed,
                           std::optional<AcfSpec> acf = std::nullopt, unsigned threads = 0);

/// One ensemble per N in `n_values` at fixed kappa. Row i uses seed
/// rng::derive_seed(seed, N_i).
std::vector<EnsembleStats> sweep_moments(double kappa, std::span<const int> n_values,
                                         int n_paths, std::uint64_t seed, unsigned threads = 0);

/// Displacements of n_blocks independent paths laid end to end: a synthetic
/// tick stream whose consecutive N-blocks are exact model samples.
std::vector<std::int8_t> synthetic_ticks(const ProcessParams& params, std::size_t n_blocks,
                                         std::uint64_t seed, unsigned threads = 0);

}  // namespace urnwalk
