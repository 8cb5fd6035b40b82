#pragma once

namespace anharmom::specfun {

// Natural log of the Gamma function for z > 0.
// Throws std::domain_error for z <= 0.
double log_gamma(double z);

// Digamma function Psi(z) = d/dz ln Gamma(z) for z > 0.
// Satisfies Psi(z+1) = Psi(z) + 1/z to machine accuracy.
// Throws std::domain_error for z <= 0.
double digamma(double z);

} // namespace anharmom::specfun
