#pragma once

#include <Eigen/Dense>

namespace anharmom::morse {

// Mechanical oscillator described by a Morse level ladder. All frequencies
// are nu = omega/2pi in THz; positions are measured in units of the
// zero-point fluctuation of the harmonic oscillator at omega_b, so no
// absolute mass or length scale appears anywhere.
struct MorseParams {
    double omega_b = 20.0;       // base frequency (THz)
    double delta_omega_b = 0.1;  // anharmonicity (THz); 0 selects the harmonic ladder

    // Real-valued ladder parameter (omega_b/delta_omega_b - 1)/2. Used inside
    // all closed-form matrix elements; only ladder sizing floors it.
    double lambda() const;

    // sqrt(delta_omega_b/omega_b); Morse range parameter in zpf units.
    double a_tilde() const;

    bool harmonic() const { return delta_omega_b == 0.0; }

    static MorseParams make(double omega_b, double delta_omega_b);
};

// Number of bound states, floor(lambda) + 1.
// Throws std::domain_error("harmonic: unbounded ladder") when
// delta_omega_b == 0; the caller must then supply an explicit truncation.
int bound_state_count(const MorseParams& p);

// Levels with finite position elements. Equals the bound count except when
// lambda is an exact integer: the top state then sits at zero binding and
// its elements diverge, so ladders exclude it.
int usable_levels(const MorseParams& p);

// Largest usable truncation: min(request, usable levels), or the request
// itself for the harmonic ladder.
int clamp_truncation(const MorseParams& p, int requested);

// Level frequency omega_k = omega_b (k+1/2) - delta_omega_b (k+1/2)^2,
// measured from the potential minimum. Throws std::out_of_range above the
// last bound state (any k >= 0 is valid for the harmonic ladder).
double eigenfrequency(const MorseParams& p, int k);

// Exact position matrix element <phi_n| x |phi_m> / x_zpf. Symmetric in
// (n, m). Gamma-function ratios are evaluated through log-gamma differences;
// the diagonal uses the digamma closed form. The harmonic ladder returns
// sqrt(max(n,m)) for |n-m| = 1 and 0 otherwise.
double position_element(const MorseParams& p, int n, int m);

// Affine approximation to the diagonal element x_{n,n}/x_zpf, valid for
// lambda >> n. Returned regardless of regime; callers check applicability.
double diagonal_element_approx(const MorseParams& p, int n);

// Per-step slope of the approximate diagonal elements,
// sqrt(omega_b/delta_omega_b) (3 + 2/N) / (2N + 1) with N = lambda. This is
// the n-independent increment x_{n+1,n+1} - x_{n,n} in the affine regime.
double diagonal_step_approx(const MorseParams& p);

// Dense K x K matrix of position elements in zpf units.
Eigen::MatrixXd position_matrix(const MorseParams& p, int K);

} // namespace anharmom::morse
