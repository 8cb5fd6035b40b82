#include "anharmom/lasing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anharmom::lasing {

MeanFieldParams MeanFieldParams::from_linearized(const rates::LinearizedParams& lin,
                                                 const rates::DriveConfig& d,
                                                 double delta_omega_b,
                                                 const rates::BathConfig& bath)
{
    return MeanFieldParams{lin.Gamma_plus, lin.Gamma_minus, lin.eta_plus,
                           lin.eta_minus,  d.g(),           delta_omega_b,
                           bath.gamma,     bath.n_th};
}

MeanFieldResult meanfield_steady(const MeanFieldParams& p)
{
    const double g2d = p.g * p.g * p.delta_omega_b;
    // 0 = a n^2 + b n + c
    const double a = 4.0 * g2d * (p.eta_minus + 2.0 * p.eta_plus);
    const double damping = (p.gamma + p.Gamma_minus - p.Gamma_plus) -
                           2.0 * g2d * (p.eta_minus + 5.0 * p.eta_plus);
    const double b = -damping;
    const double c = p.Gamma_plus + p.gamma * p.n_th + 2.0 * g2d * p.eta_plus;

    MeanFieldResult out;
    out.linear_damping = damping;
    out.unstable_linear = damping < 0.0;
    out.quadratic = std::abs(a) > 1e-300;

    if (!out.quadratic) {
        if (!(damping > 0.0))
            throw std::runtime_error("no stationary mean-field solution: "
                                     "linear model above threshold");
        out.n_x = c / damping;
        return out;
    }

    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        throw std::runtime_error("no stationary mean-field solution: "
                                 "complex roots");
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    // c/q is the root that stays finite (and equals c/damping) as the
    // quadratic coefficient vanishes; q/a is its partner.
    const double root_cont = c / q;
    const double root_other = q / a;

    if (root_cont >= 0.0)
        out.n_x = root_cont;
    else if (root_other >= 0.0)
        out.n_x = root_other;
    else
        throw std::runtime_error("no stationary mean-field solution: "
                                 "no nonnegative root");
    return out;
}

double TrajectorySystem::drive_for_population(double alpha_sq, double Delta,
                                              double kappa)
{
    if (alpha_sq < 0.0)
        throw std::invalid_argument("drive_for_population: negative population");
    return std::sqrt(alpha_sq) * std::sqrt(Delta * Delta + 0.25 * kappa * kappa);
}

namespace {

struct State {
    std::complex<double> alpha;
    double x;
    double p;
};

State operator+(const State& a, const State& b)
{
    return {a.alpha + b.alpha, a.x + b.x, a.p + b.p};
}

State operator*(double s, const State& a)
{
    return {s * a.alpha, s * a.x, s * a.p};
}

class Derivative {
public:
    explicit Derivative(const TrajectorySystem& sys)
        : delta_(sys.Delta / sys.omega_b),
          g0_(sys.g0 / sys.omega_b),
          drive_(sys.Omega / sys.omega_b),
          kappa_half_(0.5 * sys.kappa / sys.omega_b),
          gamma_half_(0.5 * sys.gamma / sys.omega_b),
          morse_(sys.force == ForceModel::Morse),
          a_(sys.a_tilde)
    {
    }

    State operator()(const State& s) const
    {
        const std::complex<double> i(0.0, 1.0);
        State d;
        d.alpha = -i * (delta_ + g0_ * s.x) * s.alpha - i * drive_ -
                  kappa_half_ * s.alpha;
        d.x = 2.0 * s.p - gamma_half_ * s.x;
        d.p = -g0_ * std::norm(s.alpha) - restoring(s.x) - gamma_half_ * s.p;
        return d;
    }

private:
    double restoring(double x) const
    {
        if (!morse_)
            return 0.5 * x;
        const double e = std::exp(-a_ * x);
        return (1.0 - e) * e / (2.0 * a_);
    }

    double delta_, g0_, drive_, kappa_half_, gamma_half_;
    bool morse_;
    double a_;
};

// Standard deviation of x over [tau_lo, tau_hi) in the sampled series.
struct WindowStats {
    double mean = 0.0;
    double sigma = 0.0;
    double mean_pop = 0.0;
    long count = 0;
};

WindowStats window_stats(const std::vector<TrajectorySample>& series,
                         double tau_lo, double tau_hi)
{
    WindowStats w;
    double sum = 0.0, pop = 0.0;
    for (const auto& s : series) {
        if (s.tau < tau_lo || s.tau >= tau_hi)
            continue;
        sum += s.x_tilde;
        pop += s.cavity_population;
        ++w.count;
    }
    if (w.count == 0)
        return w;
    w.mean = sum / w.count;
    w.mean_pop = pop / w.count;
    double var = 0.0;
    for (const auto& s : series) {
        if (s.tau < tau_lo || s.tau >= tau_hi)
            continue;
        const double d = s.x_tilde - w.mean;
        var += d * d;
    }
    w.sigma = std::sqrt(var / w.count);
    return w;
}

} // namespace

TrajectoryResult integrate_trajectory(const TrajectorySystem& sys,
                                      const IntegrationOptions& opt)
{
    if (!(opt.dtau > 0.0) || opt.dtau > 0.01)
        throw std::invalid_argument("integrate_trajectory: dtau must be in (0, 0.01]");
    if (!(opt.tau_max > 0.0))
        throw std::invalid_argument("integrate_trajectory: tau_max must be positive");
    if (sys.force == ForceModel::Morse && !(sys.a_tilde > 0.0))
        throw std::invalid_argument("integrate_trajectory: Morse force needs a_tilde > 0");

    const Derivative rhs(sys);
    const double guard =
        sys.force == ForceModel::Morse ? 5.0 / sys.a_tilde : 1e6;
    constexpr double period = 2.0 * std::numbers::pi;
    const double check_window = 100.0 * period;

    TrajectoryResult out;
    State s{sys.alpha0, sys.x0, sys.p0};
    const long n_steps = std::lround(std::ceil(opt.tau_max / opt.dtau));
    out.series.reserve(static_cast<std::size_t>(n_steps / std::max(1, opt.sample_stride)) + 2);
    out.series.push_back({0.0, s.x, s.p, std::norm(s.alpha)});

    double next_check = std::max(opt.min_settle_tau, 2.0 * check_window);
    double stop_tau = opt.tau_max;
    double tau = 0.0;

    for (long step = 1; step <= n_steps; ++step) {
        const State k1 = rhs(s);
        const State k2 = rhs(s + (0.5 * opt.dtau) * k1);
        const State k3 = rhs(s + (0.5 * opt.dtau) * k2);
        const State k4 = rhs(s + opt.dtau * k3);
        s = s + (opt.dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        tau = step * opt.dtau;

        if (!std::isfinite(s.x) || !std::isfinite(s.p) ||
            !std::isfinite(std::norm(s.alpha))) {
            out.status = TrajectoryStatus::Diverged;
            out.escape_tau = tau;
            break;
        }
        if (std::abs(s.x) > guard) {
            out.status = sys.force == ForceModel::Morse ? TrajectoryStatus::Escaped
                                                        : TrajectoryStatus::Diverged;
            out.escape_tau = tau;
            break;
        }

        if (step % std::max(1, opt.sample_stride) == 0)
            out.series.push_back({tau, s.x, s.p, std::norm(s.alpha)});

        if (opt.early_stop && tau >= next_check) {
            const auto w1 = window_stats(out.series, tau - 2.0 * check_window,
                                         tau - check_window);
            const auto w2 = window_stats(out.series, tau - check_window, tau);
            const double scale = std::max(w2.sigma, 1e-12);
            if (w1.count > 0 && w2.count > 0 &&
                std::abs(w1.sigma - w2.sigma) <= 0.01 * scale) {
                out.settled = true;
                stop_tau = tau;
                break;
            }
            next_check += check_window;
        }
    }

    if (out.status != TrajectoryStatus::Ok)
        return out;

    // Steady-window statistics: the converged tail when the settling rule
    // fired, otherwise the configured settle fraction of the run.
    double lo, hi;
    if (out.settled) {
        hi = stop_tau;
        lo = stop_tau - 2.0 * check_window;
    } else {
        hi = tau;
        lo = opt.settle_fraction * tau;
    }
    const auto w = window_stats(out.series, lo, hi);
    out.sigma_x = w.sigma;
    out.x_mean = w.mean;
    out.n_coh = 0.25 * w.sigma * w.sigma;
    out.realized_population = w.mean_pop;
    return out;
}

OscillationStats oscillation_stats(const std::vector<TrajectorySample>& series,
                                   double settle_fraction)
{
    if (series.size() < 2)
        throw std::invalid_argument("oscillation_stats: series too short");
    if (!(settle_fraction >= 0.0) || !(settle_fraction < 1.0))
        throw std::invalid_argument("oscillation_stats: settle fraction outside [0,1)");

    const double tau_end = series.back().tau;
    const double lo = settle_fraction * tau_end;
    constexpr double min_window = 50.0 * 2.0 * std::numbers::pi;
    if (tau_end - lo < min_window)
        throw std::invalid_argument(
            "oscillation_stats: settle window shorter than 50 mechanical periods");

    const auto w = window_stats(series, lo, tau_end + 1.0);
    return OscillationStats{w.sigma, w.mean, 0.25 * w.sigma * w.sigma};
}

} // namespace anharmom::lasing
