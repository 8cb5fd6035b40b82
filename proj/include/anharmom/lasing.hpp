#pragma once

#include <complex>
#include <vector>

#include "anharmom/rates.hpp"

namespace anharmom::lasing {

// Coefficients of the slope-corrected mean-field rate equation for the
// mechanical population. All rates in THz, slopes in 1/THz^2.
struct MeanFieldParams {
    double Gamma_plus;
    double Gamma_minus;
    double eta_plus;
    double eta_minus;
    double g;             // effective coupling alpha*g0 (THz)
    double delta_omega_b; // anharmonicity (THz)
    double gamma;         // mechanical decay (THz)
    double n_th;          // thermal occupation

    static MeanFieldParams from_linearized(const rates::LinearizedParams& lin,
                                           const rates::DriveConfig& d,
                                           double delta_omega_b,
                                           const rates::BathConfig& bath);
};

struct MeanFieldResult {
    double n_x;
    double linear_damping;   // coefficient of -n_x in dn/dt
    bool unstable_linear;    // negative linear damping
    bool quadratic;          // anharmonic quadratic term was active
};

// Stationary point of the corrected rate equation: the quadratic root that
// connects continuously to the harmonic solution as delta_omega_b -> 0 and is
// nonnegative. Throws std::runtime_error("no stationary mean-field
// solution") when no real nonnegative root exists.
MeanFieldResult meanfield_steady(const MeanFieldParams& p);

enum class ForceModel { Harmonic, Morse };

// Classical equations of motion in normalized coordinates: position in zpf
// units, time in units of 1/omega_b (one mechanical period = 2 pi).
struct TrajectorySystem {
    double Delta;   // cavity detuning omega_a - omega_l (THz)
    double kappa;   // cavity linewidth (THz)
    double Omega;   // drive amplitude (THz)
    double g0;      // single-phonon coupling (THz)
    double gamma;   // mechanical decay (THz)
    double omega_b; // mechanical frequency (THz)
    ForceModel force = ForceModel::Harmonic;
    double a_tilde = 0.0; // Morse range parameter (zpf units)

    // Optional initial state; the driven-from-rest protocol keeps all zero.
    std::complex<double> alpha0{0.0, 0.0};
    double x0 = 0.0;
    double p0 = 0.0;

    // Drive amplitude that would hold the bare cavity at the target
    // population: Omega = |alpha| sqrt(Delta^2 + kappa^2/4).
    static double drive_for_population(double alpha_sq, double Delta, double kappa);
};

struct TrajectorySample {
    double tau;
    double x_tilde;
    double p_tilde;
    double cavity_population; // |alpha|^2
};

enum class TrajectoryStatus { Ok, Escaped, Diverged };

struct TrajectoryResult {
    std::vector<TrajectorySample> series;
    TrajectoryStatus status = TrajectoryStatus::Ok;
    double escape_tau = 0.0;  // set when status != Ok
    bool settled = false;     // steady-window convergence rule fired
    double sigma_x = 0.0;     // steady-window standard deviation (zpf units)
    double x_mean = 0.0;      // steady-window offset
    double n_coh = 0.0;       // (sigma_x)^2 / 4
    double realized_population = 0.0; // mean |alpha|^2 over the steady window
};

struct IntegrationOptions {
    double tau_max = 12000.0;
    double dtau = 2.0 * 3.14159265358979323846 / 1000.0;
    int sample_stride = 10;       // samples every stride-th step
    double settle_fraction = 0.5; // stats window when no early convergence
    // Steady state is declared once the standard deviation over two
    // consecutive 100-period windows agrees to 1 percent (checked after
    // min_settle_tau); integration then stops.
    double min_settle_tau = 3000.0;
    bool early_stop = true;
};

// Fixed-step fourth-order integration from rest. Dissociation guard for the
// Morse force at |x| > 5/a_tilde; escapes and non-finite states are reported
// with the escape time, not thrown.
TrajectoryResult integrate_trajectory(const TrajectorySystem& sys,
                                      const IntegrationOptions& opt = {});

struct OscillationStats {
    double sigma_x;
    double x_mean;
    double n_coh;
};

// Temporal mean and standard deviation over the final (1 - settle_fraction)
// of the series. Throws std::invalid_argument when that window covers fewer
// than 50 mechanical periods.
OscillationStats oscillation_stats(const std::vector<TrajectorySample>& series,
                                   double settle_fraction);

} // namespace anharmom::lasing
