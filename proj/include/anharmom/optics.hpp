#pragma once

#include <functional>

namespace anharmom::optics {

// Scalar optical spectral densities S_opt(omega) in 1/THz. These are the
// structured reservoir seen by the vibrational ladder: transition rates are
// g^2 S_opt evaluated at the emitted-photon frequency.
using SpectralDensity = std::function<double(double)>;

// Single Lorentzian cavity mode.
struct SingleModeParams {
    double omega_1; // mode frequency (THz)
    double kappa_1; // linewidth (THz)

    static SingleModeParams make(double omega_1, double kappa_1);
};

// Two coupled modes; mode 1 appears in the numerator of the response, so the
// sharp Fano structure sits near omega_1 and the f = 0 limit reduces to the
// bare mode 2 Lorentzian.
struct HybridParams {
    double omega_1;
    double omega_2;
    double kappa_1;
    double kappa_2;
    double f; // inter-mode coupling (THz)

    static HybridParams make(double omega_1, double omega_2, double kappa_1,
                             double kappa_2, double f);
};

double spectrum_single(const SingleModeParams& p, double omega);
double spectrum_hybrid(const HybridParams& p, double omega);

SpectralDensity make_spectrum(const SingleModeParams& p);
SpectralDensity make_spectrum(const HybridParams& p);

// Local slope dS/domega by central finite difference (h = 1e-4 THz).
double spectrum_slope(const SpectralDensity& spec, double omega);

// Dense scan minimization over [omega_lo, omega_hi] with the given step;
// returns the frequency of the smallest sampled value.
double find_trough(const SpectralDensity& spec, double omega_lo, double omega_hi,
                   double step = 1e-3);
double find_peak(const SpectralDensity& spec, double omega_lo, double omega_hi,
                 double step = 1e-3);

// Linewidth of the hybridized sharp resonance: bare kappa_1 plus the decay
// inherited through the coupling to mode 2.
double fano_linewidth(const HybridParams& p);

// Default cavity parameter sets used by the bundled scenarios. The hybrid
// set places the narrow dielectric resonance (486 THz, 0.15 THz) in the
// numerator role and the broad plasmon (550 THz, 60 THz) as its partner, so
// the uncoupled limit is the plasmon background.
SingleModeParams default_single_mode(); // (550, 60) THz
HybridParams default_hybrid();          // (486, 550, 0.15, 60, 15) THz

} // namespace anharmom::optics
