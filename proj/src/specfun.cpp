#include "anharmom/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace anharmom::specfun {

namespace {

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set).
constexpr long double kLanczos[9] = {
    0.99999999999980993227684700473478L,
    676.520368121885098567009190444019L,
    -1259.13921672240287047156078755283L,
    771.3234287776530788486528258894L,
    -176.61502916214059906584551354L,
    12.507343278686904814458936853L,
    -0.13857109526572011689554707L,
    9.984369578019570859563e-6L,
    1.50563273514931155834e-7L};

constexpr long double kLogSqrtTwoPi = 0.91893853320467274178032973640562L;

} // namespace

double log_gamma(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");

    // Evaluate in extended precision; the Lanczos series loses a couple of
    // digits through cancellation for small z otherwise.
    const long double x = z;
    long double series = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        series += kLanczos[i] / (x + static_cast<long double>(i - 1));
    const long double t = x + 6.5L; // z + g - 1/2
    const long double lg =
        (x - 0.5L) * std::log(t) - t + kLogSqrtTwoPi + std::log(series);
    return static_cast<double>(lg);
}

double digamma(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("digamma: argument must be positive");

    // Recur up to the asymptotic region, then use the large-z expansion
    // Psi(x) = ln x - 1/(2x) - sum B_{2n} / (2n x^{2n}).
    long double acc = 0.0L;
    long double x = z;
    while (x < 10.0L) {
        acc -= 1.0L / x;
        x += 1.0L;
    }
    const long double inv = 1.0L / x;
    const long double inv2 = inv * inv;
    // B_2/2, B_4/4, B_6/6, B_8/8, B_10/10, B_12/12, B_14/14
    const long double c2 = 1.0L / 12.0L;
    const long double c4 = 1.0L / 120.0L;
    const long double c6 = 1.0L / 252.0L;
    const long double c8 = 1.0L / 240.0L;
    const long double c10 = 1.0L / 132.0L;
    const long double c12 = 691.0L / 32760.0L;
    const long double c14 = 1.0L / 12.0L;
    const long double tail =
        inv2 * (c2 - inv2 * (c4 - inv2 * (c6 - inv2 * (c8 - inv2 * (c10 - inv2 * (c12 - inv2 * c14))))));
    const long double psi = acc + std::log(x) - 0.5L * inv - tail;
    return static_cast<double>(psi);
}

} // namespace anharmom::specfun
