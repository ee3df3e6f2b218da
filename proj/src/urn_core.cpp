#include "urnwalk/urn_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "urnwalk/error.hpp"

namespace urnwalk {

namespace {

void require_step(const ProcessParams& params, int n, int lowest, const char* what) {
    if (n < lowest || n > params.n_total()) {
        throw BoundsError(std::string(what) + ": step " + std::to_string(n) +
                          " outside [" + std::to_string(lowest) + ", " +
                          std::to_string(params.n_total()) + "]");
    }
}

// log C(n, k) for small non-negative integers; the multiplicative loop is exact
// in double well past the sizes used here.
double log_choose(int n, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return std::log(c);
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(long double v) {
        const long double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

}  // namespace

ProcessParams::ProcessParams(int n_total, double kappa) : n_total_(n_total), kappa_(kappa) {
    if (n_total < 1) {
        throw ParameterError("n_total must be >= 1, got " + std::to_string(n_total));
    }
    if (!(kappa >= -0.5 && kappa <= 0.5)) {
        throw ParameterError("kappa must lie in [-1/2, 1/2], got " + std::to_string(kappa));
    }
}

ProcessParams ProcessParams::from_epsilon(int n_total, double epsilon) {
    if (n_total < 1) {
        throw ParameterError("n_total must be >= 1, got " + std::to_string(n_total));
    }
    double kappa = epsilon * n_total;
    constexpr double slack = 1e-12;
    if (kappa > 0.5 && kappa <= 0.5 + slack) kappa = 0.5;
    if (kappa < -0.5 && kappa >= -0.5 - slack) kappa = -0.5;
    return ProcessParams(n_total, kappa);
}

double Pmf::at(int x) const noexcept {
    if (x < -n || x > n || ((x + n) & 1) != 0) return 0.0;
    return probs[static_cast<std::size_t>((x + n) / 2)];
}

Pmf evolve_pmf(const ProcessParams& params, int upto) {
    require_step(params, upto, 0, "evolve_pmf");
    const double eps = params.epsilon();

    Pmf pmf;
    pmf.n = upto;
    pmf.probs.assign(static_cast<std::size_t>(upto) + 1, 0.0);
    auto& p = pmf.probs;
    p[0] = 1.0;

    // Step n -> n+1 in place, walking j downwards so p[j-1] is still the old value.
    // From position y the walk moves up with probability 1/2 + y eps.
    for (int n = 0; n < upto; ++n) {
        const auto top = static_cast<std::size_t>(n) + 1;
        p[top] = p[top - 1] * (0.5 + Pmf::position(n, top - 1) * eps);
        for (std::size_t j = top - 1; j >= 1; --j) {
            const double down = p[j] * (0.5 - Pmf::position(n, j) * eps);
            const double up = p[j - 1] * (0.5 + Pmf::position(n, j - 1) * eps);
            p[j] = down + up;
        }
        p[0] = p[0] * (0.5 - Pmf::position(n, 0) * eps);
    }
    return pmf;
}

double mgf_closed_form(const ProcessParams& params, int n, double q) {
    if (params.kappa() == 0.0) {
        throw DomainError("mgf_closed_form is singular at kappa = 0; use mgf_bernoulli");
    }
    require_step(params, n, 1, "mgf_closed_form");
    if (!(q > 0.0)) throw ParameterError("mgf_closed_form: q must be > 0");

    const double eps = params.epsilon();
    const double a = params.n_total() / (2.0 * params.kappa());  // 1 / (2 eps)

    for (int k = 1; k <= n; ++k) {
        if (std::fabs(a + k) <= 1e-9 * std::max(1.0, std::fabs(a))) {
            throw SingularTermError("mgf_closed_form: 1/(2 eps) + " + std::to_string(k) +
                                    " vanishes for kappa = " + std::to_string(params.kappa()));
        }
    }

    // Generalized binomial C(a + n, n) = prod_{i<n} (a + n - i) / n!, kept as log|.| and sign.
    double log_gbinom = 0.0;
    int sign_gbinom = 1;
    for (int i = 0; i < n; ++i) {
        const double factor = a + n - i;
        log_gbinom += std::log(std::fabs(factor)) - std::log(static_cast<double>(i + 1));
        if (factor < 0) sign_gbinom = -sign_gbinom;
    }

    const double outer = (1.0 + q) * (1.0 + q) / (4.0 * q);        // -A, A < 0
    const double inner = (1.0 - q) * (1.0 - q) / ((1.0 + q) * (1.0 + q));  // -B, B <= 0
    const double log_outer = std::log(outer);
    const double log_inner = inner > 0.0 ? std::log(inner) : 0.0;
    const double log_two_eps = std::log(std::fabs(2.0 * eps));
    const int sign_two_eps_pow = (eps < 0 && (n - 1) % 2 != 0) ? -1 : 1;

    CompensatedSum sum;
    for (int k = 1; k <= n; ++k) {
        const double log_head = log_gbinom + log_choose(n, k) + (n - 1) * log_two_eps -
                                std::log(std::fabs(a + k)) + k * log_outer;
        int sign_head = sign_gbinom * sign_two_eps_pow * ((a + k) < 0 ? -1 : 1);
        if (k % 2 != 0) sign_head = -sign_head;

        for (int i = 0; i <= k; ++i) {
            if (i > 0 && inner == 0.0) break;
            const int diff = 2 * i - k;
            if (diff == 0) continue;
            const double log_mag = log_head + log_choose(k, i) +
                                   n * std::log(std::fabs(static_cast<double>(diff))) +
                                   i * log_inner;
            int sign = sign_head;
            if (diff < 0 && n % 2 != 0) sign = -sign;
            if (i % 2 != 0) sign = -sign;
            sum.add(sign * std::exp(static_cast<long double>(log_mag)));
        }
    }
    return static_cast<double>(sum.value());
}

double mgf_bernoulli(int n, double q) {
    if (n < 1) throw ParameterError("mgf_bernoulli: n must be >= 1");
    if (!(q > 0.0)) throw ParameterError("mgf_bernoulli: q must be > 0");
    return std::pow(0.5 * (q + 1.0 / q), n);
}

double mgf(const ProcessParams& params, int n, double q) {
    require_step(params, n, 0, "mgf");
    if (!(q > 0.0)) throw ParameterError("mgf: q must be > 0");
    if (n == 0) return 1.0;
    if (params.kappa() == 0.0) return mgf_bernoulli(n, q);
    return mgf_closed_form(params, n, q);
}

MomentSet moments(const Pmf& pmf) {
    long double m1 = 0, m2 = 0, m4 = 0;
    for (std::size_t j = 0; j < pmf.probs.size(); ++j) {
        const long double x = pmf.position(j);
        const long double p = pmf.probs[j];
        const long double x2 = x * x;
        m1 += p * x;
        m2 += p * x2;
        m4 += p * x2 * x2;
    }
    MomentSet out;
    out.mean = static_cast<double>(m1);
    out.variance = static_cast<double>(m2);
    out.fourth_moment = static_cast<double>(m4);
    out.kurtosis = m2 > 0 ? static_cast<double>(m4 / (m2 * m2)) : 0.0;
    return out;
}

MomentSet moments_exact(const ProcessParams& params, int n) {
    require_step(params, n, 1, "moments_exact");
    return moments(evolve_pmf(params, n));
}

double second_moment(const ProcessParams& params, int n) {
    require_step(params, n, 0, "second_moment");
    const double eps = params.epsilon();
    if (eps == 0.0) return n;
    return std::expm1(n * std::log1p(4.0 * eps)) / (4.0 * eps);
}

MomentSeries moment_series(const ProcessParams& params) {
    const double n = params.n_total();
    const double e = params.epsilon();
    MomentSeries out;
    out.variance = n + 4.0 * n * (n - 1) / 2.0 * e + 16.0 * n * (n - 1) * (n - 2) / 6.0 * e * e;
    out.fourth_moment = n * (3 * n - 2) + 8.0 * n * (n - 1) / 2.0 * (3 * n - 4) * e +
                        56.0 * n * (n - 1) * (n - 2) / 6.0 * (3 * n - 43.0 / 7.0) * e * e;
    return out;
}

double diffusion_speed_sq(double kappa) {
    return 1.0 + 2.0 * kappa + 8.0 * kappa * kappa / 3.0;
}

double diffusion_speed(double kappa) { return std::sqrt(diffusion_speed_sq(kappa)); }

double position_acf_model(const ProcessParams& params, int n, int lag) {
    if (n < 1 || lag < 1 || n + lag > params.n_total()) {
        throw BoundsError("position_acf_model: need n >= 1, lag >= 1, n + lag <= N (n=" +
                          std::to_string(n) + ", lag=" + std::to_string(lag) +
                          ", N=" + std::to_string(params.n_total()) + ")");
    }
    const double ratio = second_moment(params, n) / second_moment(params, n + lag);
    return std::sqrt(ratio) * std::pow(1.0 + 2.0 * params.epsilon(), lag);
}

double displacement_acf_leading(const ProcessParams& params) {
    return 2.0 * params.kappa() / params.n_total();
}

}  // namespace urnwalk
