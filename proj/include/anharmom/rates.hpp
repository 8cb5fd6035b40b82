#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "anharmom/morse.hpp"
#include "anharmom/optics.hpp"

namespace anharmom::rates {

// Coherent drive of the optical mode. alpha is taken real and nonnegative;
// |alpha|^2 is the cavity population reported on every drive axis. The
// effective coupling is g = alpha * g0.
struct DriveConfig {
    double omega_l;  // laser frequency (THz)
    double alpha;    // coherent cavity amplitude
    double g0;       // single-phonon coupling (THz)

    double g() const { return alpha * g0; }

    static DriveConfig make(double omega_l, double alpha, double g0);
    static DriveConfig from_population(double omega_l, double alpha_sq, double g0);
};

// Unstructured thermal bath acting on neighboring levels only.
struct BathConfig {
    double gamma; // mechanical decay rate (THz)
    double n_th;  // thermal occupation

    static BathConfig make(double gamma, double n_th);
};

// Per-level dressed frequencies and optomechanical transition rates. The
// level-resolved rates exclude the |x_{k+-1,k}|^2 matrix-element weights;
// those are applied by the population solver. gamma_plus[K-1] and
// gamma_minus[0] are unused and held at zero.
class RateLadder {
public:
    RateLadder(std::vector<double> omega_tilde, std::vector<double> gamma_plus,
               std::vector<double> gamma_minus);

    int size() const { return static_cast<int>(omega_tilde_.size()); }
    bool with_thermal() const { return with_thermal_; }

    const std::vector<double>& omega_tilde() const { return omega_tilde_; }
    double omega_tilde(int k) const { return omega_tilde_.at(k); }
    double gamma_plus(int k) const { return gamma_plus_.at(k); }
    double gamma_minus(int k) const { return gamma_minus_.at(k); }

    // Total rates including the thermal contribution. Require a prior
    // attach_thermal; throw std::logic_error otherwise.
    double bar_plus(int k) const;
    double bar_minus(int k) const;

    // Adds n_th*gamma upward and (n_th+1)*gamma downward to every level.
    // Throws std::logic_error on a second application.
    void attach_thermal(const BathConfig& bath);

private:
    std::vector<double> omega_tilde_;
    std::vector<double> gamma_plus_;
    std::vector<double> gamma_minus_;
    bool with_thermal_ = false;
    double thermal_up_ = 0.0;
    double thermal_down_ = 0.0;
};

// Level frequencies dressed by the coherent field through the exact diagonal
// position elements: w~_k = w_k - alpha^2 g0 x_{k,k}.
std::vector<double> dressed_frequencies(const morse::MorseParams& m,
                                        const DriveConfig& d, int K);

// Stokes/anti-Stokes rates from a pinned dressed-frequency array:
//   Gamma_+(k) = g^2 S(omega_l - (w~_{k+1} - w~_k)),
//   Gamma_-(k) = g^2 S(omega_l + (w~_k - w~_{k-1})).
RateLadder raman_rates_at(std::span<const double> omega_tilde,
                          const optics::SpectralDensity& spec,
                          const DriveConfig& d);

// Same, computing the dressed frequencies internally.
RateLadder raman_rates(const morse::MorseParams& m,
                       const optics::SpectralDensity& spec,
                       const DriveConfig& d, int K);

// Convenience: raman rates with the thermal bath attached.
RateLadder total_rates(RateLadder ladder, const BathConfig& bath);

// Reference rates and spectral slopes for the slope-expanded rate model:
//   Gamma_+(k) ~ Gamma_plus + eta_plus (k+1) g^2 2 delta_omega_b,
//   Gamma_-(k) ~ Gamma_minus - eta_minus k g^2 2 delta_omega_b.
// The reference frequencies carry the affine dressing shift. For the
// harmonic ladder the slopes are zero and the rates sit at omega_l -+ omega_b.
struct LinearizedParams {
    double Gamma_plus;
    double Gamma_minus;
    double eta_plus;
    double eta_minus;
    double omega_ref_plus;
    double omega_ref_minus;
};

LinearizedParams linearized_params(const morse::MorseParams& m,
                                   const optics::SpectralDensity& spec,
                                   const DriveConfig& d);

// Validation-only all-pairs rate matrix: R(j, k) is the j -> k rate
// g^2 S(omega_l - (w~_k - w~_j)) for j != k, without matrix-element weights.
// Used by the oracle cross-check of the neighbor-transition restriction.
Eigen::MatrixXd all_pair_rate_matrix(const morse::MorseParams& m,
                                     const optics::SpectralDensity& spec,
                                     const DriveConfig& d, int K);

} // namespace anharmom::rates
