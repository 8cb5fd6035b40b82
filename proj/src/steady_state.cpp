#include "anharmom/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace anharmom::steady_state {

Eigen::MatrixXd population_generator(const rates::RateLadder& ladder,
                                     const Eigen::MatrixXd& elements)
{
    const int K = ladder.size();
    if (elements.rows() < K || elements.cols() < K)
        throw std::invalid_argument("population_generator: element matrix too small");

    // w[k] weights the k <-> k+1 bond on both directions.
    std::vector<double> w(K, 0.0);
    for (int k = 0; k + 1 < K; ++k)
        w[k] = elements(k, k + 1) * elements(k, k + 1);

    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(K, K);
    for (int k = 0; k + 1 < K; ++k) {
        const double up = w[k] * ladder.bar_plus(k);
        const double down = w[k] * ladder.bar_minus(k + 1);
        gen(k + 1, k) += up;
        gen(k, k) -= up;
        gen(k, k + 1) += down;
        gen(k + 1, k + 1) -= down;
    }
    return gen;
}

PopulationVector solve_populations(const rates::RateLadder& ladder,
                                   const Eigen::MatrixXd& elements, int K)
{
    if (K < 2)
        throw std::invalid_argument("solve_populations: need at least two levels");
    if (K > ladder.size())
        throw std::out_of_range("solve_populations: truncation exceeds the rate ladder");

    bool any_rate = false;
    for (int k = 0; k + 1 < K && !any_rate; ++k)
        any_rate = ladder.bar_plus(k) > 0.0 || ladder.bar_minus(k + 1) > 0.0;
    if (!any_rate)
        throw std::runtime_error("no stationary distribution: all rates vanish");

    Eigen::MatrixXd gen = population_generator(ladder, elements);

    // Replace the last balance row with the normalization condition.
    Eigen::MatrixXd M = gen.topRows(K);
    M.row(K - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(K);
    rhs(K - 1) = 1.0;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::VectorXd p = lu.solve(rhs);
    // One round of iterative refinement keeps the residual at rounding level
    // for strongly driven ladders.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd r = rhs - M * p;
        if (r.lpNorm<Eigen::Infinity>() < 1e-13)
            break;
        p += lu.solve(r);
    }

    const double residual = (M * p - rhs).lpNorm<Eigen::Infinity>();
    if (!p.allFinite() || residual > 1e-10)
        throw std::runtime_error("no stationary distribution: singular rate system");
    if (p.minCoeff() < -1e-12)
        throw std::runtime_error("solve_populations: negative population beyond round-off");

    p = p.cwiseMax(0.0);
    p /= p.sum();
    return p;
}

double mechanical_population(const PopulationVector& p,
                             const Eigen::MatrixXd& elements)
{
    const int K = static_cast<int>(p.size());
    double n = 0.0;
    for (int i = 0; i < K; ++i) {
        double s = 0.0;
        for (int k = 0; k < i; ++k)
            s += elements(i, k) * elements(k, i);
        n += p(i) * s;
    }
    return n;
}

double intensity_correlation(const PopulationVector& p,
                             const Eigen::MatrixXd& elements)
{
    const double n = mechanical_population(p, elements);
    if (!(n > 0.0))
        throw std::domain_error("intensity_correlation: undefined, n_x is zero");

    // <i| x- x- x+ x+ |i> = sum_l ( sum_{l<k<i} x_{lk} x_{ki} )^2: both
    // descent paths run strictly downward, so the double-lowered amplitude
    // is squared and every contribution is nonnegative.
    const int K = static_cast<int>(p.size());
    double g2 = 0.0;
    for (int i = 0; i < K; ++i) {
        if (p(i) == 0.0)
            continue;
        double s = 0.0;
        for (int l = 0; l + 1 < i; ++l) {
            double amp = 0.0;
            for (int k = l + 1; k < i; ++k)
                amp += elements(l, k) * elements(k, i);
            s += amp * amp;
        }
        g2 += p(i) * s;
    }
    return g2 / (n * n);
}

SteadyStateResult solve(const rates::RateLadder& ladder,
                        const Eigen::MatrixXd& elements, int K)
{
    SteadyStateResult out;
    out.populations = solve_populations(ladder, elements, K);
    out.n_x = mechanical_population(out.populations, elements);
    out.g2_0 = out.n_x > 0.0 ? intensity_correlation(out.populations, elements)
                             : 0.0;
    return out;
}

ThreeLevelResult three_level_analytic(double bar_plus_0, double bar_plus_1,
                                      double bar_minus_1, double bar_minus_2)
{
    for (double r : {bar_plus_0, bar_plus_1, bar_minus_1, bar_minus_2})
        if (r < 0.0)
            throw std::invalid_argument("three_level_analytic: negative rate");

    const double d = bar_minus_1 * bar_minus_2 + bar_minus_2 * bar_plus_0 +
                     bar_plus_0 * bar_plus_1;
    if (!(d > 0.0))
        throw std::invalid_argument("three_level_analytic: all rates vanish");

    ThreeLevelResult r;
    r.p0 = bar_minus_1 * bar_minus_2 / d;
    r.p1 = bar_minus_2 * bar_plus_0 / d;
    r.p2 = bar_plus_0 * bar_plus_1 / d;
    r.n_x_harmonic = r.p1 + 2.0 * r.p2;
    r.g2_harmonic = 2.0 * r.p2 / (r.n_x_harmonic * r.n_x_harmonic);
    return r;
}

G2ClosedForm g2_closed_form(double bar_plus_0, double bar_plus_1,
                            double bar_minus)
{
    if (!(bar_plus_0 > 0.0) || !(bar_plus_1 > 0.0) || !(bar_minus > 0.0))
        throw std::invalid_argument("g2_closed_form: rates must be positive");

    const double exact =
        2.0 * bar_plus_1 *
        (bar_minus * bar_minus + bar_plus_0 * (bar_minus + bar_plus_1)) /
        (bar_plus_0 * (bar_minus + 2.0 * bar_plus_1) *
         (bar_minus + 2.0 * bar_plus_1));
    const double crude =
        2.0 * bar_plus_1 / bar_plus_0 * (1.0 + bar_plus_0 / bar_minus);
    return G2ClosedForm{exact, crude};
}

} // namespace anharmom::steady_state
