#include "anharmom/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anharmom::oracle {

namespace {

double potential(const morse::MorseParams& m, double x)
{
    if (m.harmonic())
        return 0.25 * m.omega_b * x * x;
    const double a = m.a_tilde();
    const double u = 1.0 - std::exp(-a * x);
    return m.omega_b / (4.0 * a * a) * u * u;
}

struct Tridiagonal {
    std::vector<double> diag;
    double off; // constant off-diagonal
};

Tridiagonal build_hamiltonian(const morse::MorseParams& m,
                              const std::vector<double>& x, double h)
{
    const double kin = m.omega_b / (h * h);
    Tridiagonal t;
    t.diag.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        t.diag[i] = 2.0 * kin + potential(m, x[i]);
    t.off = -kin;
    return t;
}

// Number of eigenvalues strictly below sigma (Sturm count via the LDL^T
// pivot signs of T - sigma I).
int sturm_count(const Tridiagonal& t, double sigma)
{
    const double off2 = t.off * t.off;
    int count = 0;
    double q = t.diag[0] - sigma;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < t.diag.size(); ++i) {
        if (q == 0.0)
            q = 1e-300;
        q = t.diag[i] - sigma - off2 / q;
        if (q < 0.0)
            ++count;
    }
    return count;
}

std::vector<double> bisect_lowest(const Tridiagonal& t, int n_states)
{
    double lo = *std::min_element(t.diag.begin(), t.diag.end()) - 2.0 * std::abs(t.off);
    double hi = *std::max_element(t.diag.begin(), t.diag.end()) + 2.0 * std::abs(t.off);

    std::vector<double> vals(n_states);
    for (int k = 0; k < n_states; ++k) {
        double a = lo, b = hi;
        // Shrink until exactly the k-th eigenvalue is isolated.
        for (int iter = 0; iter < 200 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++iter) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(t, mid) > k)
                b = mid;
            else
                a = mid;
        }
        vals[k] = 0.5 * (a + b);
    }
    return vals;
}

// Tridiagonal solve with partial pivoting (two-band elimination); the shifted
// systems here are nearly singular by construction.
void solve_shifted(const Tridiagonal& t, double sigma, std::vector<double>& v)
{
    const std::size_t n = t.diag.size();
    std::vector<double> d(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0),
        dl(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = t.diag[i] - sigma;
    std::fill(du.begin(), du.end(), t.off);
    std::fill(dl.begin(), dl.end(), t.off);
    std::fill(du2.begin(), du2.end(), 0.0);
    std::vector<int> piv(n, 0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dl[i]) > std::abs(d[i])) {
            piv[i] = 1;
            std::swap(d[i], dl[i]);
            std::swap(du[i], d[i + 1]);
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = 0.0;
            }
            std::swap(v[i], v[i + 1]);
        }
        if (d[i] == 0.0)
            d[i] = 1e-300;
        const double mult = dl[i] / d[i];
        d[i + 1] -= mult * du[i];
        if (i + 2 < n)
            du[i + 1] -= mult * du2[i];
        v[i + 1] -= mult * v[i];
    }
    if (d[n - 1] == 0.0)
        d[n - 1] = 1e-300;

    v[n - 1] /= d[n - 1];
    if (n > 1)
        v[n - 2] = (v[n - 2] - du[n - 2] * v[n - 1]) / d[n - 2];
    for (std::size_t ii = n; ii-- > 2;) {
        const std::size_t i = ii - 2;
        double s = v[i] - du[i] * v[i + 1];
        if (i + 2 < n)
            s -= du2[i] * v[i + 2];
        v[i] = s / d[i];
    }
    (void)piv;
}

Eigen::MatrixXd inverse_iteration(const Tridiagonal& t,
                                  const std::vector<double>& eigenvalues,
                                  double h)
{
    const std::size_t n = t.diag.size();
    const int m = static_cast<int>(eigenvalues.size());
    Eigen::MatrixXd vecs(n, m);

    for (int k = 0; k < m; ++k) {
        std::vector<double> v(n);
        // Deterministic, sign-alternating start avoids accidental
        // orthogonality to the target state.
        for (std::size_t i = 0; i < n; ++i)
            v[i] = 1.0 + 1e-3 * static_cast<double>((i * 2654435761u) % 1024) / 1024.0;

        const double shift = eigenvalues[k] * (1.0 + 1e-13) + 1e-300;
        for (int iter = 0; iter < 4; ++iter) {
            solve_shifted(t, shift, v);
            // Orthogonalize against the states already converged.
            for (int j = 0; j < k; ++j) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += vecs(i, j) * v[i];
                for (std::size_t i = 0; i < n; ++i)
                    v[i] -= dot * vecs(i, j);
            }
            double norm = 0.0;
            for (double c : v)
                norm += c * c;
            norm = std::sqrt(norm);
            for (double& c : v)
                c /= norm;
        }
        for (std::size_t i = 0; i < n; ++i)
            vecs(i, k) = v[i];
    }

    // Discrete L2 normalization: h * sum psi^2 = 1.
    vecs /= std::sqrt(h);
    return vecs;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> x(n);
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        x[i] = lo + i * h;
    x.back() = hi;
    return x;
}

// Outermost classical turning point of state with energy E.
double outer_turning_point(const morse::MorseParams& m, double E)
{
    if (m.harmonic())
        return 2.0 * std::sqrt(E / m.omega_b);
    const double a = m.a_tilde();
    const double de = m.omega_b / (4.0 * a * a);
    const double r = std::sqrt(std::min(E / de, 1.0 - 1e-12));
    return -std::log(1.0 - r) / a;
}

double inner_turning_point(const morse::MorseParams& m, double E)
{
    if (m.harmonic())
        return -2.0 * std::sqrt(E / m.omega_b);
    const double a = m.a_tilde();
    const double de = m.omega_b / (4.0 * a * a);
    const double r = std::sqrt(E / de);
    return -std::log(1.0 + r) / a;
}

} // namespace

GridSpec GridSpec::make(double x_min, double x_max, int n_points)
{
    if (!(x_min < 0.0) || !(x_max > 0.0))
        throw std::invalid_argument("GridSpec: domain must straddle the origin");
    if (n_points < 16)
        throw std::invalid_argument("GridSpec: too few points");
    return GridSpec{x_min, x_max, n_points};
}

GridSpec auto_grid(const morse::MorseParams& m, int n_states, int n_points)
{
    const double E_top = morse::eigenfrequency(m, n_states - 1);
    // Outer decay margin sized from the binding energy of the highest
    // requested state: the tail falls off as exp(-sqrt((D-E)/omega_b) x), so
    // weakly bound states near dissociation need a long grid.
    double margin_out = 8.0;
    if (!m.harmonic()) {
        const double a = m.a_tilde();
        const double dissociation = m.omega_b / (4.0 * a * a);
        const double kappa =
            std::sqrt(std::max(dissociation - E_top, 1e-12) / m.omega_b);
        margin_out = std::clamp(21.0 / kappa, 10.0, 2000.0);
    }
    const double margin_in = 6.0;
    const double lo = inner_turning_point(m, E_top) - margin_in;
    const double hi = outer_turning_point(m, E_top) + margin_out;
    return GridSpec::make(std::min(lo, -6.0), std::max(hi, 6.0), n_points);
}

GridSolution grid_diagonalize(const morse::MorseParams& m, const GridSpec& grid,
                              int n_states)
{
    if (n_states < 1)
        throw std::invalid_argument("grid_diagonalize: need at least one state");
    if (!m.harmonic())
        n_states = std::min(n_states, morse::bound_state_count(m));

    GridSolution sol;

    const auto solve_level = [&](int n_pts, std::vector<double>& xs, double& h,
                                 std::vector<double>& vals, Eigen::MatrixXd& vecs) {
        xs = linspace(grid.x_min, grid.x_max, n_pts);
        h = xs[1] - xs[0];
        const Tridiagonal t = build_hamiltonian(m, xs, h);
        vals = bisect_lowest(t, n_states);
        vecs = inverse_iteration(t, vals, h);
    };

    std::vector<double> x_coarse;
    solve_level(grid.n_points, x_coarse, sol.coarse_h, sol.eigenvalues_coarse,
                sol.eigenvectors_coarse);
    std::vector<double> vals_fine;
    solve_level(2 * grid.n_points - 1, sol.x, sol.h, vals_fine, sol.eigenvectors);

    // Boundary decay check on the fine grid.
    for (int k = 0; k < n_states; ++k) {
        const double edge = std::max(std::abs(sol.eigenvectors(0, k)),
                                     std::abs(sol.eigenvectors(sol.x.size() - 1, k)));
        if (edge > 1e-8)
            throw std::runtime_error("grid too small: state " + std::to_string(k) +
                                     " does not decay at the boundary");
    }

    // h^2 -> 0 extrapolation of the eigenvalues across the refinement.
    sol.eigenvalues.resize(n_states);
    for (int k = 0; k < n_states; ++k)
        sol.eigenvalues[k] =
            (4.0 * vals_fine[k] - sol.eigenvalues_coarse[k]) / 3.0;
    return sol;
}

namespace {

Eigen::MatrixXd elements_on_grid(const morse::MorseParams& m,
                                 const std::vector<double>& x, double h,
                                 const Eigen::MatrixXd& vecs,
                                 const std::vector<double>& energies)
{
    const int n_states = static_cast<int>(vecs.cols());
    const std::size_t n = x.size();

    // Fix each state's sign at its outermost classical turning point.
    Eigen::MatrixXd psi = vecs;
    for (int k = 0; k < n_states; ++k) {
        const double xt = outer_turning_point(m, energies[k]);
        std::size_t idx = static_cast<std::size_t>(
            std::clamp((xt - x.front()) / h, 0.0, static_cast<double>(n - 1)));
        if (psi(idx, k) < 0.0)
            psi.col(k) *= -1.0;
    }

    Eigen::MatrixXd el(n_states, n_states);
    for (int a = 0; a < n_states; ++a)
        for (int b = a; b < n_states; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += psi(i, a) * x[i] * psi(i, b);
            el(a, b) = el(b, a) = h * s;
        }
    return el;
}

} // namespace

Eigen::MatrixXd numeric_position_elements(const morse::MorseParams& m,
                                          const GridSolution& sol)
{
    std::vector<double> x_coarse(sol.eigenvectors_coarse.rows());
    for (std::size_t i = 0; i < x_coarse.size(); ++i)
        x_coarse[i] = sol.x.front() + i * sol.coarse_h;

    const Eigen::MatrixXd fine = elements_on_grid(
        m, sol.x, sol.h, sol.eigenvectors, sol.eigenvalues);
    const Eigen::MatrixXd coarse = elements_on_grid(
        m, x_coarse, sol.coarse_h, sol.eigenvectors_coarse, sol.eigenvalues);
    return (4.0 * fine - coarse) / 3.0;
}

int grid_bound_states(const morse::MorseParams& m, const GridSolution& sol)
{
    if (m.harmonic())
        return static_cast<int>(sol.eigenvalues.size());
    const double a = m.a_tilde();
    const double de = m.omega_b / (4.0 * a * a);
    int count = 0;
    for (double e : sol.eigenvalues)
        if (e < de)
            ++count;
    return count;
}

EvolutionResult evolve_rate_ladder(const rates::RateLadder& ladder,
                                   const Eigen::MatrixXd& elements,
                                   const Eigen::VectorXd& p0, double t_max,
                                   double dt, int sample_stride)
{
    const int K = ladder.size();
    if (p0.size() != K)
        throw std::invalid_argument("evolve_rate_ladder: initial vector size mismatch");

    const Eigen::MatrixXd gen = steady_state::population_generator(ladder, elements);
    double max_rate = 0.0;
    for (int k = 0; k < K; ++k)
        max_rate = std::max(max_rate, -gen(k, k));
    if (max_rate > 0.0 && dt > 0.1 / max_rate)
        throw std::invalid_argument("evolve_rate_ladder: dt too large for the "
                                    "fastest rate");

    EvolutionResult out;
    Eigen::VectorXd p = p0;
    out.max_sum_drift = std::abs(p.sum() - 1.0);
    out.times.push_back(0.0);
    out.populations.push_back(p);

    const long n_steps = std::lround(std::ceil(t_max / dt));
    for (long step = 1; step <= n_steps; ++step) {
        const Eigen::VectorXd k1 = gen * p;
        const Eigen::VectorXd k2 = gen * (p + 0.5 * dt * k1);
        const Eigen::VectorXd k3 = gen * (p + 0.5 * dt * k2);
        const Eigen::VectorXd k4 = gen * (p + dt * k3);
        p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        out.max_sum_drift = std::max(out.max_sum_drift, std::abs(p.sum() - 1.0));
        if (step % sample_stride == 0 || step == n_steps) {
            out.times.push_back(step * dt);
            out.populations.push_back(p);
        }
    }
    return out;
}

steady_state::PopulationVector
steady_state_all_pairs(const Eigen::MatrixXd& rate_matrix,
                       const Eigen::MatrixXd& elements,
                       const rates::BathConfig& bath)
{
    const int K = static_cast<int>(rate_matrix.rows());
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(K, K);
    for (int j = 0; j < K; ++j)
        for (int k = 0; k < K; ++k) {
            if (j == k)
                continue;
            const double w = elements(j, k) * elements(j, k);
            double r = w * rate_matrix(j, k);
            if (k == j + 1)
                r += w * bath.n_th * bath.gamma;
            if (k == j - 1)
                r += w * (bath.n_th + 1.0) * bath.gamma;
            gen(k, j) += r;
            gen(j, j) -= r;
        }

    Eigen::MatrixXd M = gen;
    M.row(K - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(K);
    rhs(K - 1) = 1.0;
    Eigen::VectorXd p = M.partialPivLu().solve(rhs);
    if (!p.allFinite())
        throw std::runtime_error("steady_state_all_pairs: singular system");
    p = p.cwiseMax(0.0);
    p /= p.sum();
    return p;
}

} // namespace anharmom::oracle
