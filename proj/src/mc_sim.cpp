#include "urnwalk/mc_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <thread>

#include "urnwalk/error.hpp"
#include "urnwalk/rng.hpp"

namespace urnwalk {

namespace {

// Step-up thresholds on the 53-bit draw k = r >> 11, indexed by x + N.
// uniform() < p  <=>  k * 2^-53 < p  <=>  k < ceil(p * 2^53), so the integer
// comparison reproduces the floating-point one exactly.
std::vector<std::uint64_t> up_thresholds(int n_total, double eps) {
    std::vector<std::uint64_t> table(2 * static_cast<std::size_t>(n_total) + 1);
    for (int x = -n_total; x <= n_total; ++x) {
        const double p = 0.5 + x * eps;
        table[static_cast<std::size_t>(x + n_total)] =
            p <= 0 ? 0 : static_cast<std::uint64_t>(std::ceil(std::ldexp(std::min(p, 1.0), 53)));
    }
    return table;
}

// Walks one path, calling visit(step, displacement, position) for steps 1..N.
template <typename Visit>
void walk(int n_total, const std::uint64_t* thresholds, rng::Xoshiro256& gen, Visit&& visit) {
    const std::uint64_t* centre = thresholds + n_total;
    int x = 0;
    for (int m = 1; m <= n_total; ++m) {
        const int up = static_cast<int>((gen() >> 11) < centre[x]);
        const int dx = 2 * up - 1;
        x += dx;
        visit(m, dx, x);
    }
}

// Runs body(i) for i in [0, count) over `threads` workers in contiguous chunks.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = count * t / threads;
        const std::size_t end = count * (t + 1) / threads;
        workers.emplace_back([begin, end, &body] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

struct SubRange {
    std::size_t begin, end;
};

SubRange sub_range(std::size_t n, int subs, int s) {
    return {n * static_cast<std::size_t>(s) / subs, n * static_cast<std::size_t>(s + 1) / subs};
}

double ratio_or_nan(long double num, long double den_a, long double den_b) {
    if (den_a <= 0 || den_b <= 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(num / std::sqrt(den_a * den_b));
}

// Tiny sub-ensembles can leave a ratio undefined (all x = 0); those are
// dropped from the spread.
std::vector<double> finite_only(const std::vector<double>& values) {
    std::vector<double> out;
    for (double v : values)
        if (std::isfinite(v)) out.push_back(v);
    return out;
}

}  // namespace

unsigned default_thread_count() {
    if (const char* env = std::getenv("URNWALK_THREADS"); env != nullptr) {
        unsigned value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc() && ptr == end && value > 0) return value;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

int subensemble_count(std::size_t n_samples) {
    if (n_samples >= 200) return 100;
    return static_cast<int>(std::min<std::size_t>(10, n_samples));
}

PathSample sample_path(const ProcessParams& params, std::uint64_t seed) {
    PathSample path;
    path.displacements.reserve(static_cast<std::size_t>(params.n_total()));
    path.positions.reserve(static_cast<std::size_t>(params.n_total()));
    rng::Xoshiro256 gen(seed);
    const auto thresholds = up_thresholds(params.n_total(), params.epsilon());
    walk(params.n_total(), thresholds.data(), gen, [&](int, int dx, int x) {
        path.displacements.push_back(static_cast<std::int8_t>(dx));
        path.positions.push_back(x);
    });
    return path;
}

EnsembleStats run_ensemble(const ProcessParams& params, int n_paths, std::uint64_t seed,
                           std::optional<AcfSpec> acf, unsigned threads) {
    if (n_paths < 2) {
        throw ParameterError("run_ensemble: need at least 2 paths to estimate uncertainties");
    }
    const int n_total = params.n_total();
    if (acf) {
        if (acf->n < 1 || acf->max_lag < 1 || acf->n + acf->max_lag > n_total) {
            throw ParameterError("run_ensemble: ACF window needs n >= 1, max_lag >= 1, n + max_lag <= N");
        }
    }

    const auto paths = static_cast<std::size_t>(n_paths);
    const std::size_t window = acf ? static_cast<std::size_t>(acf->max_lag) + 1 : 0;
    const int acf_first = acf ? acf->n : 0;
    const int acf_last = acf ? acf->n + acf->max_lag : -1;

    std::vector<std::int32_t> final_x(paths);
    std::vector<std::int32_t> window_x(paths * window);
    std::vector<std::int8_t> window_dx(paths * window);
    const auto thresholds = up_thresholds(n_total, params.epsilon());

    parallel_for(paths, threads, [&](std::size_t i) {
        rng::Xoshiro256 gen(rng::derive_seed(seed, i));
        std::int32_t* wx = window_x.data() + i * window;
        std::int8_t* wdx = window_dx.data() + i * window;
        int last = 0;
        walk(n_total, thresholds.data(), gen, [&](int m, int dx, int x) {
            if (m >= acf_first && m <= acf_last) {
                wx[m - acf_first] = x;
                wdx[m - acf_first] = static_cast<std::int8_t>(dx);
            }
            last = x;
        });
        final_x[i] = last;
    });

    EnsembleStats out;
    out.n_total = n_total;
    out.kappa = params.kappa();
    out.n_paths = n_paths;
    out.acf = acf;
    const int subs = subensemble_count(paths);
    out.n_subensembles = subs;

    // Moments of x_N, reduced in fixed path order.
    std::vector<double> sub_m2(subs), sub_m4(subs), sub_kurt(subs);
    long double total_m2 = 0, total_m4 = 0;
    for (int s = 0; s < subs; ++s) {
        const auto [begin, end] = sub_range(paths, subs, s);
        long double m2 = 0, m4 = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const long double x2 = static_cast<long double>(final_x[i]) * final_x[i];
            m2 += x2;
            m4 += x2 * x2;
        }
        total_m2 += m2;
        total_m4 += m4;
        const auto count = static_cast<long double>(end - begin);
        sub_m2[s] = static_cast<double>(m2 / count);
        sub_m4[s] = static_cast<double>(m4 / count);
        sub_kurt[s] = m2 > 0 ? static_cast<double>((m4 / count) / ((m2 / count) * (m2 / count)))
                             : std::numeric_limits<double>::quiet_NaN();
    }
    out.variance = {static_cast<double>(total_m2 / paths), subensemble_error(sub_m2)};
    out.fourth_moment = {static_cast<double>(total_m4 / paths), subensemble_error(sub_m4)};
    const auto kurt = finite_only(sub_kurt);
    out.kurtosis = {plain_mean(kurt), subensemble_error(kurt)};

    if (acf) {
        for (int lag = 1; lag <= acf->max_lag; ++lag) {
            std::vector<double> sub_disp(subs), sub_pos(subs);
            long double all_disp = 0, all_cross = 0, all_a = 0, all_b = 0;
            for (int s = 0; s < subs; ++s) {
                const auto [begin, end] = sub_range(paths, subs, s);
                long double disp = 0, cross = 0, a = 0, b = 0;
                for (std::size_t i = begin; i < end; ++i) {
                    const std::int32_t* wx = window_x.data() + i * window;
                    const std::int8_t* wdx = window_dx.data() + i * window;
                    disp += wdx[0] * wdx[lag];
                    cross += static_cast<long double>(wx[0]) * wx[lag];
                    a += static_cast<long double>(wx[0]) * wx[0];
                    b += static_cast<long double>(wx[lag]) * wx[lag];
                }
                sub_disp[s] = static_cast<double>(disp / (end - begin));
                sub_pos[s] = ratio_or_nan(cross, a, b);
                all_disp += disp;
                all_cross += cross;
                all_a += a;
                all_b += b;
            }
            out.displacement_acf.push_back(
                {static_cast<double>(all_disp / paths), subensemble_error(sub_disp)});
            out.position_acf.push_back(
                {ratio_or_nan(all_cross, all_a, all_b), subensemble_error(finite_only(sub_pos))});
        }
    }
    return out;
}

std::vector<EnsembleStats> sweep_moments(double kappa, std::span<const int> n_values,
                                         int n_paths, std::uint64_t seed, unsigned threads) {
    std::vector<EnsembleStats> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 1) throw ParameterError("sweep_moments: every N must be >= 1");
    }
    for (int n : n_values) {
        rows.push_back(run_ensemble(ProcessParams(n, kappa), n_paths,
                                    rng::derive_seed(seed, static_cast<std::uint64_t>(n)),
                                    std::nullopt, threads));
    }
    return rows;
}

std::vector<std::int8_t> synthetic_ticks(const ProcessParams& params, std::size_t n_blocks,
                                         std::uint64_t seed, unsigned threads) {
    const auto len = static_cast<std::size_t>(params.n_total());
    std::vector<std::int8_t> ticks(n_blocks * len);
    const auto thresholds = up_thresholds(params.n_total(), params.epsilon());
    parallel_for(n_blocks, threads, [&](std::size_t b) {
        rng::Xoshiro256 gen(rng::derive_seed(seed, b));
        std::int8_t* out = ticks.data() + b * len;
        walk(params.n_total(), thresholds.data(), gen,
             [&](int m, int dx, int) { out[m - 1] = static_cast<std::int8_t>(dx); });
    });
    return ticks;
}

}  // namespace urnwalk
