#include "anharmom/morse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anharmom/specfun.hpp"

namespace anharmom::morse {

using specfun::digamma;
using specfun::log_gamma;

double MorseParams::lambda() const
{
    return (omega_b / delta_omega_b - 1.0) / 2.0;
}

double MorseParams::a_tilde() const
{
    return std::sqrt(delta_omega_b / omega_b);
}

MorseParams MorseParams::make(double omega_b, double delta_omega_b)
{
    if (!(omega_b > 0.0))
        throw std::invalid_argument("MorseParams: omega_b must be positive");
    if (delta_omega_b < 0.0)
        throw std::invalid_argument("MorseParams: delta_omega_b must be nonnegative");
    if (delta_omega_b >= omega_b)
        throw std::invalid_argument("MorseParams: delta_omega_b must be below omega_b");
    return MorseParams{omega_b, delta_omega_b};
}

int bound_state_count(const MorseParams& p)
{
    if (p.harmonic())
        throw std::domain_error(
            "harmonic: unbounded ladder (supply an explicit truncation)");
    return static_cast<int>(std::floor(p.lambda())) + 1;
}

int usable_levels(const MorseParams& p)
{
    const int count = bound_state_count(p);
    const double lam = p.lambda();
    return std::floor(lam) == lam ? count - 1 : count;
}

int clamp_truncation(const MorseParams& p, int requested)
{
    if (requested < 1)
        throw std::invalid_argument("clamp_truncation: need at least one level");
    if (p.harmonic())
        return requested;
    return std::min(requested, usable_levels(p));
}

double eigenfrequency(const MorseParams& p, int k)
{
    if (k < 0)
        throw std::out_of_range("eigenfrequency: negative level index");
    if (!p.harmonic() && k >= bound_state_count(p))
        throw std::out_of_range("eigenfrequency: level " + std::to_string(k) +
                                " above the last bound state");
    const double h = k + 0.5;
    return p.omega_b * h - p.delta_omega_b * h * h;
}

namespace {

void check_element_index(const MorseParams& p, int idx, const char* what)
{
    if (idx < 0)
        throw std::out_of_range(std::string(what) + ": negative level index");
    if (!p.harmonic() && idx >= usable_levels(p))
        throw std::out_of_range(std::string(what) + ": level " +
                                std::to_string(idx) + " outside the usable ladder");
}

// Off-diagonal element for n > m, real-valued ladder parameter N.
double off_diagonal(double prefactor, double N, int n, int m)
{
    const double sign = ((n - m - 1) % 2 == 0) ? 1.0 : -1.0;
    const double coeff = 2.0 / (static_cast<double>(n - m) * (2.0 * N - n - m));
    // sqrt of (N-n)(N-m) Gamma(2N-n+1) n! / (Gamma(2N-m+1) m!), with the
    // Gamma ratios paired as log differences so nothing overflows.
    const double log_inner = std::log(N - n) + std::log(N - m) +
                             log_gamma(2.0 * N - n + 1.0) - log_gamma(2.0 * N - m + 1.0) +
                             log_gamma(n + 1.0) - log_gamma(m + 1.0);
    return prefactor * sign * coeff * std::exp(0.5 * log_inner);
}

double diagonal_exact(double prefactor, double N, int n)
{
    return prefactor * (std::log(2.0 * N + 1.0) + digamma(2.0 * N - n + 1.0) -
                        digamma(2.0 * N - 2.0 * n + 1.0) - digamma(2.0 * N - 2.0 * n));
}

} // namespace

double position_element(const MorseParams& p, int n, int m)
{
    check_element_index(p, n, "position_element");
    check_element_index(p, m, "position_element");

    if (p.harmonic()) {
        if (std::abs(n - m) == 1)
            return std::sqrt(static_cast<double>(std::max(n, m)));
        return 0.0;
    }

    const double N = p.lambda();
    const double prefactor = std::sqrt(p.omega_b / p.delta_omega_b);
    if (n == m)
        return diagonal_exact(prefactor, N, n);
    if (n < m)
        std::swap(n, m);
    return off_diagonal(prefactor, N, n, m);
}

double diagonal_element_approx(const MorseParams& p, int n)
{
    if (p.harmonic())
        return 0.0;
    const double N = p.lambda();
    return std::sqrt(p.omega_b / p.delta_omega_b) *
           (2.0 * std::log((N + 0.5) / N) + (3.0 + 2.0 / N) * n / (2.0 * N + 1.0));
}

double diagonal_step_approx(const MorseParams& p)
{
    if (p.harmonic())
        return 0.0;
    const double N = p.lambda();
    return std::sqrt(p.omega_b / p.delta_omega_b) * (3.0 + 2.0 / N) / (2.0 * N + 1.0);
}

Eigen::MatrixXd position_matrix(const MorseParams& p, int K)
{
    if (K < 1)
        throw std::invalid_argument("position_matrix: need at least one level");
    check_element_index(p, K - 1, "position_matrix");

    Eigen::MatrixXd x(K, K);
    for (int n = 0; n < K; ++n) {
        x(n, n) = position_element(p, n, n);
        for (int m = 0; m < n; ++m) {
            const double v = position_element(p, n, m);
            x(n, m) = v;
            x(m, n) = v;
        }
    }
    return x;
}

} // namespace anharmom::morse
