#include "anharmom/optics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace anharmom::optics {

SingleModeParams SingleModeParams::make(double omega_1, double kappa_1)
{
    if (!(kappa_1 > 0.0))
        throw std::invalid_argument("SingleModeParams: kappa_1 must be positive");
    return SingleModeParams{omega_1, kappa_1};
}

HybridParams HybridParams::make(double omega_1, double omega_2, double kappa_1,
                                double kappa_2, double f)
{
    if (!(kappa_1 > 0.0) || !(kappa_2 > 0.0))
        throw std::invalid_argument("HybridParams: linewidths must be positive");
    if (f < 0.0)
        throw std::invalid_argument("HybridParams: coupling must be nonnegative");
    return HybridParams{omega_1, omega_2, kappa_1, kappa_2, f};
}

double spectrum_single(const SingleModeParams& p, double omega)
{
    const double d = omega - p.omega_1;
    const double hw = 0.5 * p.kappa_1;
    return hw / (d * d + hw * hw);
}

double spectrum_hybrid(const HybridParams& p, double omega)
{
    using namespace std::complex_literals;
    const std::complex<double> a = omega - p.omega_1 - 0.5i * p.kappa_1;
    const std::complex<double> b = omega - p.omega_2 - 0.5i * p.kappa_2;
    return std::imag(a / (a * b - p.f * p.f));
}

SpectralDensity make_spectrum(const SingleModeParams& p)
{
    return [p](double omega) { return spectrum_single(p, omega); };
}

SpectralDensity make_spectrum(const HybridParams& p)
{
    return [p](double omega) { return spectrum_hybrid(p, omega); };
}

double spectrum_slope(const SpectralDensity& spec, double omega)
{
    constexpr double h = 1e-4;
    return (spec(omega + h) - spec(omega - h)) / (2.0 * h);
}

namespace {

double scan_extremum(const SpectralDensity& spec, double lo, double hi,
                     double step, bool minimum)
{
    if (!(hi > lo) || !(step > 0.0))
        throw std::invalid_argument("spectrum scan: bad interval or step");
    const long n = std::lround(std::floor((hi - lo) / step));
    double best_omega = lo;
    double best = spec(lo);
    for (long i = 1; i <= n; ++i) {
        const double omega = lo + i * step;
        const double s = spec(omega);
        if (minimum ? (s < best) : (s > best)) {
            best = s;
            best_omega = omega;
        }
    }
    return best_omega;
}

} // namespace

double find_trough(const SpectralDensity& spec, double omega_lo, double omega_hi,
                   double step)
{
    return scan_extremum(spec, omega_lo, omega_hi, step, true);
}

double find_peak(const SpectralDensity& spec, double omega_lo, double omega_hi,
                 double step)
{
    return scan_extremum(spec, omega_lo, omega_hi, step, false);
}

double fano_linewidth(const HybridParams& p)
{
    const double d = p.omega_1 - p.omega_2;
    const double hw2 = 0.5 * p.kappa_2;
    return p.kappa_1 + p.f * p.f * p.kappa_2 / (d * d + hw2 * hw2);
}

SingleModeParams default_single_mode()
{
    return SingleModeParams::make(550.0, 60.0);
}

HybridParams default_hybrid()
{
    return HybridParams::make(486.0, 550.0, 0.15, 60.0, 15.0);
}

} // namespace anharmom::optics
