#pragma once

#include <cstddef>
#include <vector>

namespace urnwalk {

/// Parameterization of the correlated urn walk: the number of draws N and
/// the correlation kappa in [-1/2, 1/2]. The per-step feedback is
/// eps = kappa / N, so from position x the next step is +1 with
/// probability 1/2 + x * eps.
class ProcessParams {
public:
    /// Throws ParameterError if n_total < 1 or |kappa| > 1/2.
    ProcessParams(int n_total, double kappa);

    /// Builds params from eps directly. kappa = eps * N is clamped to
    /// [-1/2, 1/2] to absorb one-ulp rounding at the prior boundary; anything
    /// further out is rejected.
    static ProcessParams from_epsilon(int n_total, double epsilon);

    int n_total() const noexcept { return n_total_; }
    double kappa() const noexcept { return kappa_; }
    double epsilon() const noexcept { return kappa_ / n_total_; }

private:
    int n_total_;
    double kappa_;
};

/// Probability mass over positions -n, -n+2, ..., n at step n.
/// probs[j] is the probability of position -n + 2j.
struct Pmf {
    int n = 0;
    std::vector<double> probs;

    static constexpr int position(int n, std::size_t j) noexcept {
        return -n + 2 * static_cast<int>(j);
    }
    int position(std::size_t j) const noexcept { return position(n, j); }
    /// Probability of position x; 0 off the support.
    double at(int x) const noexcept;
};

/// Moments about the origin. The process is symmetric, so these coincide
/// with the central moments up to rounding.
struct MomentSet {
    double mean = 0.0;
    double variance = 0.0;
    double fourth_moment = 0.0;
    double kurtosis = 0.0;  // fourth_moment / variance^2
};

struct MomentSeries {
    double variance = 0.0;
    double fourth_moment = 0.0;
};

/// Exact PMF after `upto` draws, starting from P(0) = 1. O(upto^2).
/// Throws BoundsError if upto > N or upto < 0.
Pmf evolve_pmf(const ProcessParams& params, int upto);

/// Closed-form generating function Z_n(q) = sum_x q^x P(x, n) for kappa != 0.
///
/// Each summand is evaluated as log-magnitude and sign, then accumulated with
/// compensated summation. The sum alternates in sign and loses roughly one
/// digit per step beyond n ~ 10; it is accurate to ~1e-10 relative for
/// n <= 10 and ~1e-5 at n = 20. Prefer evolve_pmf for anything larger.
///
/// Throws DomainError for kappa == 0, BoundsError unless 1 <= n <= N,
/// ParameterError for q <= 0, and SingularTermError when 1/(2 eps) + k == 0
/// for some k in 1..n.
double mgf_closed_form(const ProcessParams& params, int n, double q);

/// (q + 1/q)^n / 2^n, the uncorrelated limit.
double mgf_bernoulli(int n, double q);

/// Z_n(q) for any valid kappa: Z_0 = 1, Bernoulli form at kappa == 0,
/// closed form otherwise.
double mgf(const ProcessParams& params, int n, double q);

/// Moments of `pmf` by direct summation.
MomentSet moments(const Pmf& pmf);

/// Moments at step n by summation over evolve_pmf(params, n).
MomentSet moments_exact(const ProcessParams& params, int n);

/// <x_n^2> from the recursion <x_{m+1}^2> = (1 + 4 eps) <x_m^2> + 1,
/// i.e. ((1 + 4 eps)^n - 1) / (4 eps), and exactly n when eps == 0.
double second_moment(const ProcessParams& params, int n);

/// Small-kappa truncations of <x_N^2> and <x_N^4>, accurate to O(kappa^3).
MomentSeries moment_series(const ProcessParams& params);

/// H^2 = 1 + 2 kappa + 8 kappa^2 / 3, the truncated large-N value of <x_N^2>/N.
double diffusion_speed_sq(double kappa);
double diffusion_speed(double kappa);

/// Model position auto-correlation
///   C(n, l) = sqrt(<x_n^2> / <x_{n+l}^2>) (1 + 2 eps)^l.
/// Requires n >= 1, lag >= 1, n + lag <= N.
double position_acf_model(const ProcessParams& params, int n, int lag);

/// Leading-order displacement auto-correlation 2 kappa / N.
double displacement_acf_leading(const ProcessParams& params);

}  // namespace urnwalk
