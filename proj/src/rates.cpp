#include "anharmom/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace anharmom::rates {

DriveConfig DriveConfig::make(double omega_l, double alpha, double g0)
{
    if (alpha < 0.0)
        throw std::invalid_argument("DriveConfig: alpha must be nonnegative");
    return DriveConfig{omega_l, alpha, g0};
}

DriveConfig DriveConfig::from_population(double omega_l, double alpha_sq, double g0)
{
    if (alpha_sq < 0.0)
        throw std::invalid_argument("DriveConfig: cavity population must be nonnegative");
    return make(omega_l, std::sqrt(alpha_sq), g0);
}

BathConfig BathConfig::make(double gamma, double n_th)
{
    if (gamma < 0.0)
        throw std::invalid_argument("BathConfig: gamma must be nonnegative");
    if (n_th < 0.0)
        throw std::invalid_argument("BathConfig: n_th must be nonnegative");
    return BathConfig{gamma, n_th};
}

RateLadder::RateLadder(std::vector<double> omega_tilde,
                       std::vector<double> gamma_plus,
                       std::vector<double> gamma_minus)
    : omega_tilde_(std::move(omega_tilde)),
      gamma_plus_(std::move(gamma_plus)),
      gamma_minus_(std::move(gamma_minus))
{
    if (omega_tilde_.size() != gamma_plus_.size() ||
        omega_tilde_.size() != gamma_minus_.size())
        throw std::invalid_argument("RateLadder: array lengths differ");
    for (double r : gamma_plus_)
        if (!(r >= 0.0) || !std::isfinite(r))
            throw std::invalid_argument("RateLadder: rates must be finite and nonnegative");
    for (double r : gamma_minus_)
        if (!(r >= 0.0) || !std::isfinite(r))
            throw std::invalid_argument("RateLadder: rates must be finite and nonnegative");
}

double RateLadder::bar_plus(int k) const
{
    if (!with_thermal_)
        throw std::logic_error("RateLadder: thermal contribution not attached");
    return gamma_plus_.at(k) + thermal_up_;
}

double RateLadder::bar_minus(int k) const
{
    if (!with_thermal_)
        throw std::logic_error("RateLadder: thermal contribution not attached");
    return gamma_minus_.at(k) + thermal_down_;
}

void RateLadder::attach_thermal(const BathConfig& bath)
{
    if (with_thermal_)
        throw std::logic_error("RateLadder: thermal contribution attached twice");
    thermal_up_ = bath.n_th * bath.gamma;
    thermal_down_ = (bath.n_th + 1.0) * bath.gamma;
    with_thermal_ = true;
}

std::vector<double> dressed_frequencies(const morse::MorseParams& m,
                                        const DriveConfig& d, int K)
{
    if (K < 1)
        throw std::invalid_argument("dressed_frequencies: need at least one level");
    if (!m.harmonic() && K > morse::usable_levels(m))
        throw std::out_of_range("dressed_frequencies: truncation exceeds the bound ladder");

    const double shift_scale = d.alpha * d.alpha * d.g0;
    std::vector<double> w(K);
    for (int k = 0; k < K; ++k)
        w[k] = morse::eigenfrequency(m, k) -
               shift_scale * morse::position_element(m, k, k);
    return w;
}

RateLadder raman_rates_at(std::span<const double> omega_tilde,
                          const optics::SpectralDensity& spec,
                          const DriveConfig& d)
{
    const int K = static_cast<int>(omega_tilde.size());
    if (K < 1)
        throw std::invalid_argument("raman_rates_at: empty frequency ladder");

    const double g2 = d.g() * d.g();
    std::vector<double> plus(K, 0.0), minus(K, 0.0);
    for (int k = 0; k + 1 < K; ++k)
        plus[k] = g2 * spec(d.omega_l - (omega_tilde[k + 1] - omega_tilde[k]));
    for (int k = 1; k < K; ++k)
        minus[k] = g2 * spec(d.omega_l + (omega_tilde[k] - omega_tilde[k - 1]));
    return RateLadder(std::vector<double>(omega_tilde.begin(), omega_tilde.end()),
                      std::move(plus), std::move(minus));
}

RateLadder raman_rates(const morse::MorseParams& m,
                       const optics::SpectralDensity& spec,
                       const DriveConfig& d, int K)
{
    return raman_rates_at(dressed_frequencies(m, d, K), spec, d);
}

RateLadder total_rates(RateLadder ladder, const BathConfig& bath)
{
    ladder.attach_thermal(bath);
    return ladder;
}

LinearizedParams linearized_params(const morse::MorseParams& m,
                                   const optics::SpectralDensity& spec,
                                   const DriveConfig& d)
{
    const double g2 = d.g() * d.g();
    if (m.harmonic()) {
        const double wp = d.omega_l - m.omega_b;
        const double wm = d.omega_l + m.omega_b;
        return LinearizedParams{g2 * spec(wp), g2 * spec(wm), 0.0, 0.0, wp, wm};
    }

    const double shift = d.alpha * d.alpha * d.g0 * morse::diagonal_step_approx(m);
    const double wp = d.omega_l - m.omega_b + shift;
    const double wm = d.omega_l + m.omega_b - shift;
    return LinearizedParams{g2 * spec(wp),
                            g2 * spec(wm),
                            optics::spectrum_slope(spec, wp),
                            optics::spectrum_slope(spec, wm),
                            wp,
                            wm};
}

Eigen::MatrixXd all_pair_rate_matrix(const morse::MorseParams& m,
                                     const optics::SpectralDensity& spec,
                                     const DriveConfig& d, int K)
{
    const auto w = dressed_frequencies(m, d, K);
    const double g2 = d.g() * d.g();
    Eigen::MatrixXd rate = Eigen::MatrixXd::Zero(K, K);
    for (int j = 0; j < K; ++j)
        for (int k = 0; k < K; ++k)
            if (j != k)
                rate(j, k) = g2 * spec(d.omega_l - (w[k] - w[j]));
    return rate;
}

} // namespace anharmom::rates
