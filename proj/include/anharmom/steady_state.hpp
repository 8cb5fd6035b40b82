#pragma once

#include <vector>

#include <Eigen/Dense>

#include "anharmom/rates.hpp"

namespace anharmom::steady_state {

// Stationary occupation probabilities of the level ladder. Normalized to
// unit sum; entries are clamped to [0, 1] after the residual check.
using PopulationVector = Eigen::VectorXd;

struct SteadyStateResult {
    PopulationVector populations;
    double n_x;
    double g2_0;
};

// Generator of the neighbor-transition population dynamics, with
// |x_{k+-1,k}|^2 weights on every rate: dp/dt = G p.
Eigen::MatrixXd population_generator(const rates::RateLadder& ladder,
                                     const Eigen::MatrixXd& elements);

// Stationary populations from the inhomogeneous linear system obtained by
// replacing the last balance equation with the normalization condition.
// Requires bar rates (thermal attached) and K >= 2. Throws
// std::runtime_error("no stationary distribution") when every rate vanishes.
PopulationVector solve_populations(const rates::RateLadder& ladder,
                                   const Eigen::MatrixXd& elements, int K);

// Mechanical population n_x = sum_i p_i sum_{k<i} x_{ik}^2 with the full
// (not neighbor-only) element sums, positions in zpf units.
double mechanical_population(const PopulationVector& p,
                             const Eigen::MatrixXd& elements);

// Equal-time intensity correlation g2(0) = G2 / n_x^2 with
// G2 = sum_i p_i sum_{k<i} sum_{l<k} sum_{m>l} x_{ik} x_{kl} x_{lm} x_{mi}.
// Throws std::domain_error when n_x == 0.
double intensity_correlation(const PopulationVector& p,
                             const Eigen::MatrixXd& elements);

SteadyStateResult solve(const rates::RateLadder& ladder,
                        const Eigen::MatrixXd& elements, int K);

// Closed-form stationary state of the three lowest levels, plus the
// harmonic-weight readouts n_x = p1 + 2 p2 and g2 = 2 p2 / n_x^2.
struct ThreeLevelResult {
    double p0;
    double p1;
    double p2;
    double n_x_harmonic;
    double g2_harmonic;
};

ThreeLevelResult three_level_analytic(double bar_plus_0, double bar_plus_1,
                                      double bar_minus_1, double bar_minus_2);

// Three-level correlation estimates under a flat anti-Stokes rate: the exact
// three-level expression and the crude contrast form
// 2 (G+1/G+0) (1 + G+0/G-).
struct G2ClosedForm {
    double exact_three_level;
    double crude;
};

G2ClosedForm g2_closed_form(double bar_plus_0, double bar_plus_1,
                            double bar_minus);

} // namespace anharmom::steady_state
