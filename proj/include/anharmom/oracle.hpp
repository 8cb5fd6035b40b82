#pragma once

#include <vector>

#include <Eigen/Dense>

#include "anharmom/morse.hpp"
#include "anharmom/rates.hpp"
#include "anharmom/steady_state.hpp"

namespace anharmom::oracle {

// Real-space grid in zpf units.
struct GridSpec {
    double x_min = -12.0;
    double x_max = 40.0;
    int n_points = 4000;

    static GridSpec make(double x_min, double x_max, int n_points);
};

// Grid wide enough for the lowest n_states of the given ladder: classical
// turning points of the highest requested state plus a decay margin.
GridSpec auto_grid(const morse::MorseParams& m, int n_states, int n_points = 4000);

struct GridSolution {
    std::vector<double> x;            // fine grid nodes
    double h;                         // fine grid spacing
    std::vector<double> eigenvalues;  // extrapolated over a grid doubling
    Eigen::MatrixXd eigenvectors;     // fine-grid columns, unit discrete norm
    std::vector<double> eigenvalues_coarse;
    Eigen::MatrixXd eigenvectors_coarse;
    double coarse_h;
};

// Finite-difference diagonalization of the dimensionless Hamiltonian
//   -omega_b d^2/dx^2 + V(x),  V = (omega_b/4a^2)(1 - e^{-a x})^2
// (harmonic ladder: V = omega_b x^2 / 4). Solves the tridiagonal problem on
// the requested grid and on its midpoint refinement, reporting
// h^2-extrapolated eigenvalues. Throws std::runtime_error("grid too small")
// when a requested eigenvector fails to decay below 1e-8 at either boundary.
GridSolution grid_diagonalize(const morse::MorseParams& m, const GridSpec& grid,
                              int n_states);

// Position matrix elements <phi_n| x |phi_m> by discrete quadrature,
// extrapolated over the grid doubling. Eigenvector signs are fixed to be
// positive at the outermost classical turning point.
Eigen::MatrixXd numeric_position_elements(const morse::MorseParams& m,
                                          const GridSolution& sol);

// Bound states found on the grid: eigenvalues below the dissociation energy.
int grid_bound_states(const morse::MorseParams& m, const GridSolution& sol);

// Explicit time evolution of the weighted population rate equations from p0.
// dt must resolve the fastest total rate (dt <= 0.1/max rate). Records the
// population vector every sample_stride steps, final state last.
struct EvolutionResult {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> populations;
    double max_sum_drift; // max |sum p - 1| over the run
};

EvolutionResult evolve_rate_ladder(const rates::RateLadder& ladder,
                                   const Eigen::MatrixXd& elements,
                                   const Eigen::VectorXd& p0, double t_max,
                                   double dt, int sample_stride = 100);

// Stationary populations of the all-pairs jump model (rate_matrix(j,k) = j->k
// rate without weights; |x_{jk}|^2 weights applied here). Cross-check for the
// neighbor-transition restriction.
steady_state::PopulationVector
steady_state_all_pairs(const Eigen::MatrixXd& rate_matrix,
                       const Eigen::MatrixXd& elements,
                       const rates::BathConfig& bath);

} // namespace anharmom::oracle
