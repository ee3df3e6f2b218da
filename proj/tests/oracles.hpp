// Independent reference computations used only by the test suites.
//
// Nothing here calls into the library's numerical routines: PMFs come from
// explicit path enumeration or a position-keyed map iteration, moments from
// those maps, and the displacement auto-correlation from the conditional-mean
// identity E[dx_{m+1} | x_m] = 2 eps x_m worked out by hand.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>

namespace oracle {

using PositionMap = std::map<int, double>;

/// Sum over all 2^n paths of the product of their transition probabilities.
inline PositionMap enumerate_paths(int n_total, double kappa, int n) {
    const double eps = kappa / n_total;
    PositionMap out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int x = 0;
        double p = 1.0;
        for (int step = 0; step < n; ++step) {
            const bool up = (mask >> step) & 1U;
            p *= up ? (0.5 + x * eps) : (0.5 - x * eps);
            x += up ? 1 : -1;
        }
        out[x] += p;
    }
    return out;
}

/// Position-keyed iteration of
///   P(x, n+1) = P(x+1, n) [1/2 - (x+1) eps] + P(x-1, n) [1/2 + (x-1) eps].
inline PositionMap iterate_recursion(int n_total, double kappa, int n) {
    const double eps = kappa / n_total;
    PositionMap p{{0, 1.0}};
    for (int step = 0; step < n; ++step) {
        PositionMap next;
        for (int x = -(step + 1); x <= step + 1; x += 2) {
            const double from_above = p.count(x + 1) ? p[x + 1] * (0.5 - (x + 1) * eps) : 0.0;
            const double from_below = p.count(x - 1) ? p[x - 1] * (0.5 + (x - 1) * eps) : 0.0;
            next[x] = from_above + from_below;
        }
        p = std::move(next);
    }
    return p;
}

inline double mgf_from_map(const PositionMap& p, double q) {
    long double z = 0;
    for (const auto& [x, prob] : p) z += std::pow(static_cast<long double>(q), x) * prob;
    return static_cast<double>(z);
}

inline double raw_moment(const PositionMap& p, int order) {
    long double m = 0;
    for (const auto& [x, prob] : p) m += std::pow(static_cast<long double>(x), order) * prob;
    return static_cast<double>(m);
}

inline double binomial_prob(int n, int j) {
    double c = 1.0;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    return c * std::ldexp(1.0, -n);
}

/// <x_m^2> by iterating v_{m+1} = (1 + 4 eps) v_m + 1 one step at a time.
inline double second_moment_iterated(int n_total, double kappa, int m) {
    const double eps = kappa / n_total;
    double v = 0.0;
    for (int i = 0; i < m; ++i) v = (1.0 + 4.0 * eps) * v + 1.0;
    return v;
}

/// Exact <dx_n dx_{n+l}> = 2 eps (1 + 2 eps)^(l-1) (1 + 2 eps <x_{n-1}^2>).
inline double displacement_acf_exact(int n_total, double kappa, int n, int lag) {
    const double eps = kappa / n_total;
    return 2.0 * eps * std::pow(1.0 + 2.0 * eps, lag - 1) *
           (1.0 + 2.0 * eps * second_moment_iterated(n_total, kappa, n - 1));
}

}  // namespace oracle
