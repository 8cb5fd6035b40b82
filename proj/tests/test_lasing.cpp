#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anharmom/lasing.hpp"
#include "anharmom/morse.hpp"
#include "anharmom/optics.hpp"
#include "anharmom/rates.hpp"
#include "anharmom/steady_state.hpp"

using namespace anharmom;

namespace {

lasing::TrajectorySystem reference_system(double alpha_sq, double delta_omega_b)
{
    const auto sm = optics::default_single_mode();
    const double omega_b = 20.0;
    lasing::TrajectorySystem sys;
    sys.Delta = sm.omega_1 - (sm.omega_1 + omega_b);
    sys.kappa = sm.kappa_1;
    sys.Omega =
        lasing::TrajectorySystem::drive_for_population(alpha_sq, sys.Delta, sys.kappa);
    sys.g0 = 2.0;
    sys.gamma = 0.05;
    sys.omega_b = omega_b;
    if (delta_omega_b > 0.0) {
        sys.force = lasing::ForceModel::Morse;
        sys.a_tilde = std::sqrt(delta_omega_b / omega_b);
    }
    return sys;
}

} // namespace

TEST_CASE("mean field: harmonic limit formula and thresholds")
{
    lasing::MeanFieldParams p{};
    p.Gamma_plus = 0.02;
    p.Gamma_minus = 0.01;
    p.gamma = 0.05;
    p.n_th = 0.05;
    p.g = 2.0;
    p.delta_omega_b = 0.0;
    const auto r = lasing::meanfield_steady(p);
    CHECK(r.n_x == doctest::Approx((0.02 + 0.05 * 0.05) / (0.05 + 0.01 - 0.02))
                       .epsilon(1e-12));
    CHECK_FALSE(r.unstable_linear);
    CHECK_FALSE(r.quadratic);

    // Cooling limit: no Stokes pumping.
    p.Gamma_plus = 0.0;
    p.Gamma_minus = 0.4;
    const auto c = lasing::meanfield_steady(p);
    CHECK(c.n_x == doctest::Approx(0.05 * 0.05 / (0.05 + 0.4)).epsilon(1e-12));
    CHECK(c.n_x <= p.n_th);

    // Above the linear threshold with no anharmonic saturation: no solution.
    p.Gamma_plus = 1.0;
    p.Gamma_minus = 0.1;
    CHECK_THROWS_WITH_AS(lasing::meanfield_steady(p),
                         doctest::Contains("no stationary mean-field solution"),
                         std::runtime_error);
}

TEST_CASE("mean field: quadratic branch is continuous in the harmonic limit")
{
    auto m = morse::MorseParams::make(20.0, 0.1);
    auto spec = optics::make_spectrum(optics::default_single_mode());
    auto bath = rates::BathConfig::make(0.05, 0.05);
    auto d = rates::DriveConfig::from_population(570.0, 0.3, 2.0);
    const auto lin = rates::linearized_params(m, spec, d);

    auto p = lasing::MeanFieldParams::from_linearized(lin, d, m.delta_omega_b, bath);
    const double full = lasing::meanfield_steady(p).n_x;
    // Shrinking the anharmonic terms recovers the linear solution smoothly.
    auto p_small = p;
    p_small.delta_omega_b = 1e-9;
    const double nearly_linear = lasing::meanfield_steady(p_small).n_x;
    auto p_zero = p;
    p_zero.delta_omega_b = 0.0;
    const double linear = lasing::meanfield_steady(p_zero).n_x;
    CHECK(std::abs(nearly_linear - linear) / linear < 1e-6);
    CHECK(std::abs(full - linear) / linear < 0.1);
}

TEST_CASE("mean field tracks the full ladder at low drive")
{
    auto spec = optics::make_spectrum(optics::default_single_mode());
    auto bath = rates::BathConfig::make(0.05, 0.05);
    for (double dwb : {0.1, 0.2}) {
        auto m = morse::MorseParams::make(20.0, dwb);
        const int K = morse::clamp_truncation(m, 120);
        const auto X = morse::position_matrix(m, K);
        for (double asq : {0.1, 0.25}) {
            auto d = rates::DriveConfig::from_population(570.0, asq, 2.0);
            auto lad = rates::total_rates(rates::raman_rates(m, spec, d, K), bath);
            const auto p = steady_state::solve_populations(lad, X, K);
            const double nx = steady_state::mechanical_population(p, X);
            const auto lin = rates::linearized_params(m, spec, d);
            const double mf =
                lasing::meanfield_steady(
                    lasing::MeanFieldParams::from_linearized(lin, d, dwb, bath))
                    .n_x;
            CHECK(std::abs(mf - nx) / nx < 0.05);
        }
    }
}

TEST_CASE("trajectory: undriven system stays at rest")
{
    auto sys = reference_system(0.0, 0.0);
    sys.Omega = 0.0;
    lasing::IntegrationOptions opt;
    opt.tau_max = 2000.0;
    const auto res = lasing::integrate_trajectory(sys, opt);
    CHECK(res.status == lasing::TrajectoryStatus::Ok);
    CHECK(res.sigma_x < 1e-8);
    CHECK(res.x_mean == 0.0);
}

TEST_CASE("trajectory: kicked undriven system decays")
{
    auto sys = reference_system(0.0, 0.0);
    sys.Omega = 0.0;
    sys.gamma = 1.0;
    sys.x0 = 1.0;
    lasing::IntegrationOptions opt;
    opt.tau_max = 1500.0;
    opt.settle_fraction = 0.7;
    opt.early_stop = false;
    const auto res = lasing::integrate_trajectory(sys, opt);
    CHECK(res.sigma_x < 1e-8);
    CHECK(std::abs(res.x_mean) < 1e-8);
}

TEST_CASE("trajectory: damped harmonic energy is nonincreasing")
{
    auto sys = reference_system(0.0, 0.0);
    sys.Omega = 0.0;
    sys.gamma = 0.5;
    sys.x0 = 2.0;
    lasing::IntegrationOptions opt;
    opt.tau_max = 400.0;
    opt.sample_stride = 5;
    opt.early_stop = false;
    const auto res = lasing::integrate_trajectory(sys, opt);
    double prev = std::numeric_limits<double>::infinity();
    // Energy of the damped oscillator, sampled once per period.
    const double period = 2.0 * std::numbers::pi;
    double next_sample = 0.0;
    for (const auto& s : res.series) {
        if (s.tau < next_sample)
            continue;
        next_sample += period;
        const double energy = s.p_tilde * s.p_tilde + 0.25 * s.x_tilde * s.x_tilde;
        CHECK(energy <= prev * (1.0 + 1e-9) + 1e-15);
        prev = energy;
    }
}

TEST_CASE("trajectory: decoupled cavity settles on the bare steady state")
{
    auto sys = reference_system(1.7, 0.0);
    sys.g0 = 0.0;
    lasing::IntegrationOptions opt;
    opt.tau_max = 400.0;
    opt.early_stop = false;
    const auto res = lasing::integrate_trajectory(sys, opt);
    const auto& last = res.series.back();
    const double expected = sys.Omega * sys.Omega /
                            (sys.Delta * sys.Delta + 0.25 * sys.kappa * sys.kappa);
    CHECK(last.cavity_population == doctest::Approx(expected).epsilon(1e-6));
    CHECK(expected == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(std::abs(last.x_tilde) < 1e-9);
}

TEST_CASE("trajectory: Morse force matches harmonic force as a_tilde -> 0")
{
    // Above-onset growth window; on the saturated limit cycle the free phase
    // accumulates drift linearly in time for any force perturbation, so the
    // pointwise comparison is made over a fixed growth-phase budget.
    auto harmonic = reference_system(0.34, 0.0);
    auto morse_sys = reference_system(0.34, 0.0);
    morse_sys.force = lasing::ForceModel::Morse;
    morse_sys.a_tilde = 1e-6;

    lasing::IntegrationOptions opt;
    opt.tau_max = 4000.0;
    opt.early_stop = false;
    const auto a = lasing::integrate_trajectory(harmonic, opt);
    const auto b = lasing::integrate_trajectory(morse_sys, opt);
    REQUIRE(a.series.size() == b.series.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.series.size(); ++i)
        worst = std::max(worst,
                         std::abs(a.series[i].x_tilde - b.series[i].x_tilde));
    CHECK(worst < 1e-4);
}

TEST_CASE("trajectory: dissociation guard reports the escape")
{
    // Strong drive on a shallow ladder pushes the oscillator over the
    // dissociation plateau.
    auto sys = reference_system(40.0, 2.0);
    lasing::IntegrationOptions opt;
    opt.tau_max = 4000.0;
    const auto res = lasing::integrate_trajectory(sys, opt);
    CHECK(res.status == lasing::TrajectoryStatus::Escaped);
    CHECK(res.escape_tau > 0.0);
}

TEST_CASE("trajectory option validation")
{
    auto sys = reference_system(0.5, 0.0);
    lasing::IntegrationOptions opt;
    opt.dtau = 0.02;
    CHECK_THROWS_AS(lasing::integrate_trajectory(sys, opt), std::invalid_argument);
    auto morse_sys = sys;
    morse_sys.force = lasing::ForceModel::Morse;
    morse_sys.a_tilde = 0.0;
    CHECK_THROWS_AS(lasing::integrate_trajectory(morse_sys, {}),
                    std::invalid_argument);
}

TEST_CASE("oscillation statistics of synthetic series")
{
    std::vector<lasing::TrajectorySample> sine, flat;
    const double A = 1.7;
    for (int i = 0; i <= 200000; ++i) {
        const double tau = i * 0.01;
        sine.push_back({tau, A * std::cos(tau), 0.0, 0.0});
        flat.push_back({tau, 0.73, 0.0, 0.0});
    }
    const auto s = lasing::oscillation_stats(sine, 0.5);
    CHECK(s.sigma_x == doctest::Approx(A / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(s.n_coh == doctest::Approx(A * A / 8.0).epsilon(1e-3));
    const auto f = lasing::oscillation_stats(flat, 0.5);
    CHECK(f.sigma_x < 1e-12);
    CHECK(f.x_mean == doctest::Approx(0.73));

    // Window shorter than 50 periods is rejected.
    std::vector<lasing::TrajectorySample> brief(
        sine.begin(), sine.begin() + 3000); // tau up to 30
    CHECK_THROWS_AS(lasing::oscillation_stats(brief, 0.5), std::invalid_argument);
}

TEST_CASE("coherent population definition")
{
    auto res = lasing::integrate_trajectory(reference_system(0.6, 0.0));
    CHECK(res.n_coh == doctest::Approx(res.sigma_x * res.sigma_x / 4.0));
    CHECK(res.sigma_x > 0.1); // above onset
}

TEST_CASE("suppression of the saturated amplitude with anharmonicity")
{
    lasing::IntegrationOptions opt;
    opt.tau_max = 12000.0;
    const auto h = lasing::integrate_trajectory(reference_system(0.8, 0.0), opt);
    const auto w1 = lasing::integrate_trajectory(reference_system(0.8, 0.1), opt);
    const auto w2 = lasing::integrate_trajectory(reference_system(0.8, 0.2), opt);
    CHECK(w2.sigma_x <= w1.sigma_x);
    CHECK(w1.sigma_x <= h.sigma_x);
    CHECK(w2.sigma_x > 0.1);
}
