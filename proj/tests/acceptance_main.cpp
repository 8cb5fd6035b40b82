// Acceptance suite: runs the numbered criteria and prints one pass/fail line
// per criterion. Exit code 0 iff every selected criterion passes.
//
// Usage: acceptance [N]   (run criterion N only; default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anharmom/config.hpp"
#include "anharmom/lasing.hpp"
#include "anharmom/morse.hpp"
#include "anharmom/optics.hpp"
#include "anharmom/oracle.hpp"
#include "anharmom/output.hpp"
#include "anharmom/rates.hpp"
#include "anharmom/scenarios.hpp"
#include "anharmom/steady_state.hpp"

using namespace anharmom;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// Regression baselines pinned from the first verified run of this suite.
constexpr double kPinnedBlockadeG2Min = 0.865741929666;
constexpr double kPinnedOnsetHarmonic = 0.304541015625;
constexpr double kPinnedOnsetDwb01 = 0.3058105469;
constexpr double kPinnedOnsetDwb02 = 0.3062988281;

// ---------------------------------------------------------------- helpers

struct BlockadeSweep {
    std::vector<double> omega_l;
    std::vector<double> n_x;
    std::vector<double> g2;
};

BlockadeSweep blockade_sweep(double wl_lo, double wl_hi, double step,
                             double alpha_sq, double n_th)
{
    const auto m = morse::MorseParams::make(20.0, 2.0);
    const auto spec = optics::make_spectrum(optics::default_hybrid());
    const auto bath = rates::BathConfig::make(0.05, n_th);
    const int K = morse::clamp_truncation(m, 16);
    const auto X = morse::position_matrix(m, K);

    BlockadeSweep out;
    const int n = static_cast<int>(std::lround((wl_hi - wl_lo) / step)) + 1;
    out.omega_l.resize(n);
    out.n_x.resize(n);
    out.g2.resize(n);
    cli::parallel_for(n, cli::resolve_workers(0), [&](int i) {
        const double wl = wl_lo + i * step;
        auto lad = rates::total_rates(
            rates::raman_rates(m, spec,
                               rates::DriveConfig::from_population(wl, alpha_sq, 2.0),
                               K),
            bath);
        const auto res = steady_state::solve(lad, X, K);
        out.omega_l[i] = wl;
        out.n_x[i] = res.n_x;
        out.g2[i] = res.g2_0;
    });
    return out;
}

int argmin(const std::vector<double>& v)
{
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] < v[best])
            best = i;
    return best;
}

double trajectory_sigma(double alpha_sq, double delta_omega_b, double tau_max)
{
    const auto sm = optics::default_single_mode();
    lasing::TrajectorySystem sys;
    sys.Delta = -20.0;
    sys.kappa = sm.kappa_1;
    sys.Omega =
        lasing::TrajectorySystem::drive_for_population(alpha_sq, sys.Delta, sys.kappa);
    sys.g0 = 2.0;
    sys.gamma = 0.05;
    sys.omega_b = 20.0;
    if (delta_omega_b > 0.0) {
        sys.force = lasing::ForceModel::Morse;
        sys.a_tilde = std::sqrt(delta_omega_b / 20.0);
    }
    lasing::IntegrationOptions opt;
    opt.tau_max = tau_max;
    const auto res = lasing::integrate_trajectory(sys, opt);
    return res.status == lasing::TrajectoryStatus::Ok ? res.sigma_x
                                                      : std::nan("");
}

// Onset of self-sustained oscillation: smallest cavity population whose
// trajectory develops sigma_x > 0.1 under a fixed integration budget,
// refined by bisection.
double onset_bisect(double delta_omega_b)
{
    constexpr double tau = 24000.0;
    double lo = 0.25, hi = 0.45;
    if (!(trajectory_sigma(lo, delta_omega_b, tau) < 0.1) ||
        !(trajectory_sigma(hi, delta_omega_b, tau) > 0.1))
        return std::nan("");
    for (int it = 0; it < 11; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (trajectory_sigma(mid, delta_omega_b, tau) > 0.1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- criteria

bool criterion_1(std::string& detail)
{
    Timer timer;
    struct Case {
        double dwb;
        int k_max;
        int points;
    };
    double worst = 0.0;
    for (const Case c : {Case{0.1, 49, 6000}, Case{0.2, 24, 4000}, Case{2.0, 2, 3000}}) {
        const auto m = morse::MorseParams::make(20.0, c.dwb);
        const auto sol = oracle::grid_diagonalize(
            m, oracle::auto_grid(m, c.k_max + 1, c.points), c.k_max + 1);
        for (int k = 0; k <= c.k_max; ++k) {
            const double exact = morse::eigenfrequency(m, k);
            worst = std::max(worst, std::abs(sol.eigenvalues[k] - exact) / exact);
        }
    }
    const double sec = timer.seconds();
    detail = "max rel err " + cli::format_value(worst) + ", " +
             cli::format_value(sec) + " s";
    return worst < 1e-6 && sec < 10.0;
}

bool criterion_2(std::string& detail)
{
    Timer timer;
    const auto m = morse::MorseParams::make(20.0, 0.2);
    const auto sol = oracle::grid_diagonalize(m, oracle::auto_grid(m, 9, 3000), 9);
    const auto num = oracle::numeric_position_elements(m, sol);
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= 8; ++k)
            worst = std::max(worst, std::abs(std::abs(num(n, k)) -
                                             std::abs(morse::position_element(m, n, k))));

    const auto mh = morse::MorseParams::make(20.0, 20.0 * 1e-8);
    double worst_h = 0.0;
    for (int k = 0; k <= 10; ++k)
        worst_h = std::max(worst_h, std::abs(morse::position_element(mh, k, k + 1) -
                                             std::sqrt(k + 1.0)));
    const double sec = timer.seconds();
    detail = "element err " + cli::format_value(worst) + ", harmonic recovery " +
             cli::format_value(worst_h) + ", " + cli::format_value(sec) + " s";
    return worst < 1e-6 && worst_h < 1e-3 && sec < 10.0;
}

bool criterion_3(std::string& detail)
{
    const auto m = morse::MorseParams::make(20.0, 0.2);
    const int n = morse::bound_state_count(m);
    detail = "lambda = " + cli::format_value(m.lambda()) + ", count = " +
             std::to_string(n);
    return n == 50 && m.lambda() == 49.5;
}

bool criterion_4(std::string& detail)
{
    const auto m = morse::MorseParams::make(20.0, 0.0);
    const int K = 24;
    const auto X = morse::position_matrix(m, K);
    auto lad = rates::total_rates(
        rates::raman_rates(m, optics::make_spectrum(optics::default_single_mode()),
                           rates::DriveConfig::make(570.0, 0.0, 2.0), K),
        rates::BathConfig::make(0.05, 0.05));
    const auto res = steady_state::solve(lad, X, K);
    detail = "n_x = " + cli::format_value(res.n_x) + ", g2 = " +
             cli::format_value(res.g2_0);
    return std::abs(res.n_x - 0.05) < 1e-4 && std::abs(res.g2_0 - 2.0) < 0.02;
}

bool criterion_5(std::string& detail)
{
    std::mt19937 rng(987654321u);
    std::uniform_real_distribution<double> uni(0.02, 5.0);
    const auto X = morse::position_matrix(morse::MorseParams::make(20.0, 0.0), 3);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double gp0 = uni(rng), gp1 = uni(rng), gm1 = uni(rng), gm2 = uni(rng);
        const auto closed = steady_state::three_level_analytic(gp0, gp1, gm1, gm2);

        std::vector<double> w{0, 19, 37};
        rates::RateLadder lad(w, {gp0, gp1, 0.0}, {0.0, gm1, gm2});
        lad.attach_thermal(rates::BathConfig::make(0.0, 0.0));
        const auto p = steady_state::solve_populations(lad, X, 3);

        worst = std::max({worst, std::abs(p(0) - closed.p0),
                          std::abs(p(1) - closed.p1), std::abs(p(2) - closed.p2)});

        // First-line correlation form at a flat anti-Stokes rate against the
        // solved populations.
        const auto flat = steady_state::three_level_analytic(gp0, gp1, gm1, gm1);
        const auto eq = steady_state::g2_closed_form(gp0, gp1, gm1);
        worst = std::max(worst, std::abs(eq.exact_three_level - flat.g2_harmonic));

        const double nx = p(1) + 2.0 * p(2);
        const double g2_solve = 2.0 * p(2) / (nx * nx);
        const auto eq2 = steady_state::g2_closed_form(gp0, gp1, gm2);
        if (gm1 == gm2)
            worst = std::max(worst, std::abs(eq2.exact_three_level - g2_solve));
    }
    detail = "max deviation " + cli::format_value(worst) + " over 100 tuples";
    return worst < 1e-12;
}

bool criterion_6(std::string& detail)
{
    Timer timer;
    const auto sweep = blockade_sweep(478.0, 512.0, 0.02, 4.0, 0.05);
    const int i_nx = argmin(sweep.n_x);
    const int i_g2 = argmin(sweep.g2);
    const double wl_nx = sweep.omega_l[i_nx];
    const double wl_g2 = sweep.omega_l[i_g2];
    const double g2_min = sweep.g2[i_g2];

    const bool interior_nx = i_nx > 0 && i_nx + 1 < static_cast<int>(sweep.n_x.size());
    const bool interior_g2 = i_g2 > 0 && i_g2 + 1 < static_cast<int>(sweep.g2.size());

    // Expected dip separation: the spacing difference of the dressed ladder
    // (first vs second Stokes transition matching the same spectral feature).
    const auto m = morse::MorseParams::make(20.0, 2.0);
    const auto w = rates::dressed_frequencies(
        m, rates::DriveConfig::from_population(501.0, 4.0, 2.0), 3);
    const double spacing_diff = (w[1] - w[0]) - (w[2] - w[1]);
    const double fano = optics::fano_linewidth(optics::default_hybrid());
    const double separation = wl_nx - wl_g2;

    const bool pass = interior_nx && interior_g2 && g2_min < 1.0 &&
                      wl_g2 < wl_nx &&
                      std::abs(separation - spacing_diff) < fano &&
                      timer.seconds() < 60.0;

    std::ostringstream os;
    os << "n_x min @ " << cli::format_value(wl_nx) << ", g2 min "
       << cli::format_value(g2_min) << " @ " << cli::format_value(wl_g2)
       << "; separation " << cli::format_value(separation) << " vs dressed "
       << cli::format_value(spacing_diff) << " (2*dwb = 4, Fano width "
       << cli::format_value(fano) << ")";
    if (kPinnedBlockadeG2Min > 0.0) {
        os << "; regression " << cli::format_value(kPinnedBlockadeG2Min);
        if (std::abs(g2_min - kPinnedBlockadeG2Min) > 1e-6 * kPinnedBlockadeG2Min) {
            detail = os.str();
            return false;
        }
    } else {
        os << "; PIN-ME g2_min = " << cli::format_value(g2_min);
    }
    detail = os.str();
    return pass;
}

bool criterion_7(std::string& detail)
{
    std::vector<double> nx_minima, g2_minima;
    for (double n_th : {0.05, 0.02, 0.01}) {
        const auto sweep = blockade_sweep(480.0, 510.0, 0.05, 4.0, n_th);
        nx_minima.push_back(sweep.n_x[argmin(sweep.n_x)]);
        g2_minima.push_back(sweep.g2[argmin(sweep.g2)]);
    }
    const bool pass = nx_minima[0] > nx_minima[1] && nx_minima[1] > nx_minima[2] &&
                      g2_minima[0] > g2_minima[1] && g2_minima[1] > g2_minima[2];
    std::ostringstream os;
    os << "n_x minima ";
    for (double v : nx_minima)
        os << cli::format_value(v) << " ";
    os << "| g2 minima ";
    for (double v : g2_minima)
        os << cli::format_value(v) << " ";
    detail = os.str();
    return pass;
}

struct AmpCurve {
    std::vector<double> alpha_sq;
    std::vector<double> ladder;
    std::vector<double> meanfield;
};

AmpCurve amplification_curve(double dwb)
{
    const auto m = morse::MorseParams::make(20.0, dwb);
    const auto spec = optics::make_spectrum(optics::default_single_mode());
    const auto bath = rates::BathConfig::make(0.05, 0.05);
    const int K = morse::clamp_truncation(m, 120);
    const auto X = morse::position_matrix(m, K);

    AmpCurve out;
    for (int i = 0; i < 60; ++i)
        out.alpha_sq.push_back(0.05 + i * (3.0 - 0.05) / 59.0);
    out.ladder.resize(60);
    out.meanfield.resize(60);
    cli::parallel_for(60, cli::resolve_workers(0), [&](int i) {
        const auto d =
            rates::DriveConfig::from_population(570.0, out.alpha_sq[i], 2.0);
        auto lad = rates::total_rates(rates::raman_rates(m, spec, d, K), bath);
        const auto p = steady_state::solve_populations(lad, X, K);
        out.ladder[i] = steady_state::mechanical_population(p, X);
        out.meanfield[i] =
            lasing::meanfield_steady(lasing::MeanFieldParams::from_linearized(
                                         rates::linearized_params(m, spec, d), d,
                                         dwb, bath))
                .n_x;
    });
    return out;
}

bool criterion_8(std::string& detail)
{
    double worst_rel = 0.0;
    double crossing_nx = 0.0; // largest n_x with deviation still <= 20%
    int checked = 0;
    for (double dwb : {0.1, 0.2}) {
        const auto curve = amplification_curve(dwb);
        for (int i = 0; i < 60; ++i) {
            if (curve.ladder[i] >= 30.0)
                continue;
            ++checked;
            const double rel = std::abs(curve.meanfield[i] - curve.ladder[i]) /
                               curve.ladder[i];
            worst_rel = std::max(worst_rel, rel);
            if (rel <= 0.20)
                crossing_nx = std::max(crossing_nx, curve.ladder[i]);
        }
    }

    // Harmonic reference blows up approaching the linear threshold.
    const auto spec = optics::make_spectrum(optics::default_single_mode());
    const double sp = spec(570.0 - 20.0), sm = spec(570.0 + 20.0);
    const double threshold = 0.05 / (4.0 * (sp - sm));
    const auto mh = morse::MorseParams::make(20.0, 0.0);
    const auto bath = rates::BathConfig::make(0.05, 0.05);
    std::vector<double> blowup;
    for (double eps : {0.1, 0.01, 0.001}) {
        const auto d = rates::DriveConfig::from_population(
            570.0, threshold * (1.0 - eps), 2.0);
        blowup.push_back(
            lasing::meanfield_steady(lasing::MeanFieldParams::from_linearized(
                                         rates::linearized_params(mh, spec, d), d,
                                         0.0, bath))
                .n_x);
    }
    const bool diverges = blowup[1] > 5.0 * blowup[0] && blowup[2] > 5.0 * blowup[1];

    detail = "worst mean-field deviation " + cli::format_value(worst_rel) +
             " over " + std::to_string(checked) + " points with n_x < 30 "
             "(within 20% up to n_x = " + cli::format_value(crossing_nx) +
             "); harmonic n_x at (0.9, 0.99, 0.999) of threshold: " +
             cli::format_value(blowup[0]) + ", " + cli::format_value(blowup[1]) +
             ", " + cli::format_value(blowup[2]);
    return worst_rel < 0.20 && checked > 10 && diverges;
}

bool criterion_9(std::string& detail)
{
    const auto curve1 = amplification_curve(0.1);
    const auto curve2 = amplification_curve(0.2);
    const double threshold = 0.5859; // harmonic instability of the linear model

    bool finite = true, ordered = true;
    double max1 = 0.0, max2 = 0.0;
    for (int i = 0; i < 60; ++i) {
        if (curve1.alpha_sq[i] < threshold)
            continue;
        finite = finite && std::isfinite(curve1.ladder[i]) &&
                 std::isfinite(curve2.ladder[i]);
        ordered = ordered && curve2.ladder[i] <= curve1.ladder[i] * (1.0 + 1e-9);
        max1 = std::max(max1, curve1.ladder[i]);
        max2 = std::max(max2, curve2.ladder[i]);
    }
    detail = "max n_x above threshold: " + cli::format_value(max1) + " (0.1), " +
             cli::format_value(max2) + " (0.2)";
    return finite && ordered && max1 > 10.0 && max2 > 10.0;
}

bool criterion_10(std::string& detail)
{
    Timer timer;

    // 30-point sweep per force model.
    std::vector<double> alphas;
    for (int i = 0; i < 30; ++i)
        alphas.push_back(0.05 + i * 0.1);
    struct Row {
        double sigma = 0.0;
    };
    std::vector<double> sigma_h(30), sigma_1(30), sigma_2(30);
    cli::parallel_for(90, cli::resolve_workers(0), [&](int idx) {
        const int model = idx / 30;
        const int i = idx % 30;
        const double dwb = model == 0 ? 0.0 : (model == 1 ? 0.1 : 0.2);
        const double s = trajectory_sigma(alphas[i], dwb, 12000.0);
        (model == 0 ? sigma_h : model == 1 ? sigma_1 : sigma_2)[i] = s;
    });

    const double onset_h = onset_bisect(0.0);
    const double onset_1 = onset_bisect(0.1);
    const double onset_2 = onset_bisect(0.2);

    bool quiet_below = true, lasing_above = true;
    double ncoh_max_2 = 0.0;
    for (int i = 0; i < 30; ++i) {
        if (alphas[i] < onset_h - 0.05)
            quiet_below = quiet_below && sigma_h[i] < 0.1 && sigma_1[i] < 0.1 &&
                          sigma_2[i] < 0.1;
        if (alphas[i] > onset_2 + 0.1)
            lasing_above = lasing_above && sigma_h[i] > 0.1 && sigma_1[i] > 0.1 &&
                           sigma_2[i] > 0.1;
        ncoh_max_2 = std::max(ncoh_max_2, 0.25 * sigma_2[i] * sigma_2[i]);
    }

    const bool ordered = onset_h < onset_1 && onset_1 < onset_2;
    const double sec = timer.seconds();

    std::ostringstream os;
    os << "onsets " << cli::format_value(onset_h) << " < "
       << cli::format_value(onset_1) << " < " << cli::format_value(onset_2)
       << "; max n_coh(0.2) = " << cli::format_value(ncoh_max_2) << "; "
       << cli::format_value(sec) << " s";
    bool pinned_ok = true;
    if (kPinnedOnsetHarmonic > 0.0) {
        pinned_ok = std::abs(onset_h - kPinnedOnsetHarmonic) < 2e-3 &&
                    std::abs(onset_1 - kPinnedOnsetDwb01) < 2e-3 &&
                    std::abs(onset_2 - kPinnedOnsetDwb02) < 2e-3;
        os << "; pinned (" << cli::format_value(kPinnedOnsetHarmonic) << ", "
           << cli::format_value(kPinnedOnsetDwb01) << ", "
           << cli::format_value(kPinnedOnsetDwb02) << ")";
    } else {
        os << "; PIN-ME onsets = " << cli::format_value(onset_h) << ", "
           << cli::format_value(onset_1) << ", " << cli::format_value(onset_2);
    }
    detail = os.str();
    return quiet_below && lasing_above && ordered && ncoh_max_2 >= 5.0 &&
           pinned_ok && sec < 300.0;
}

bool criterion_11(std::string& detail)
{
    // Above-onset growth run: on the saturated limit cycle the free phase
    // accumulates drift linearly in time under any force perturbation, so
    // the pointwise comparison uses a fixed 636-period budget at a drive
    // above the measured onset.
    const auto sm = optics::default_single_mode();
    lasing::TrajectorySystem harmonic;
    harmonic.Delta = -20.0;
    harmonic.kappa = sm.kappa_1;
    harmonic.Omega =
        lasing::TrajectorySystem::drive_for_population(0.36, harmonic.Delta,
                                                       harmonic.kappa);
    harmonic.g0 = 2.0;
    harmonic.gamma = 0.05;
    harmonic.omega_b = 20.0;
    auto nearly = harmonic;
    nearly.force = lasing::ForceModel::Morse;
    nearly.a_tilde = 1e-6;

    lasing::IntegrationOptions opt;
    opt.tau_max = 4000.0;
    opt.early_stop = false;
    const auto a = lasing::integrate_trajectory(harmonic, opt);
    const auto b = lasing::integrate_trajectory(nearly, opt);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.series.size(); ++i)
        worst = std::max(worst, std::abs(a.series[i].x_tilde - b.series[i].x_tilde));
    detail = "max |dx| = " + cli::format_value(worst) + " with sigma_x = " +
             cli::format_value(a.sigma_x);
    return a.sigma_x > 0.1 && worst < 1e-4;
}

bool criterion_12(std::string& detail)
{
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "anharmom_acceptance";
    fs::remove_all(base);

    struct Job {
        std::string scenario;
        cli::Config cfg;
        std::string csv;
    };
    std::vector<Job> jobs;
    {
        cli::Config c;
        c.set("sweep.omega_l_min", "483");
        c.set("sweep.omega_l_max", "506");
        c.set("sweep.omega_l_points", "47");
        jobs.push_back({"blockade-laser-sweep", c, "blockade_laser_sweep.csv"});
    }
    {
        cli::Config c;
        c.set("sweep.omega_l_min", "483");
        c.set("sweep.omega_l_max", "500");
        c.set("sweep.omega_l_points", "18");
        jobs.push_back({"thermal-sweep", c, "thermal_sweep.csv"});
    }
    {
        cli::Config c;
        c.set("sweep.delta_min", "0.4");
        c.set("sweep.delta_max", "2.0");
        c.set("sweep.delta_points", "5");
        c.set("sweep.alpha_sq_min", "0.5");
        c.set("sweep.alpha_sq_max", "4.0");
        c.set("sweep.alpha_sq_points", "6");
        jobs.push_back({"blockade-map", c, "blockade_map.csv"});
        jobs.push_back({"laser-freq-alt", c, "laser_freq_alt.csv"});
    }
    {
        cli::Config c;
        c.set("sweep.alpha_sq_min", "0.1");
        c.set("sweep.alpha_sq_max", "1.0");
        c.set("sweep.alpha_sq_points", "7");
        jobs.push_back({"amplification", c, "amplification.csv"});
    }
    {
        cli::Config c;
        c.set("sweep.alpha_sq_min", "0.2");
        c.set("sweep.alpha_sq_max", "0.8");
        c.set("sweep.alpha_sq_points", "3");
        c.set("sweep.delta_list", "0.2");
        c.set("trajectory.tau_max", "4000");
        jobs.push_back({"lasing-map", c, "lasing_map.csv"});
    }
    jobs.push_back({"validate", {}, "validate.csv"});

    for (std::size_t j = 0; j < jobs.size(); ++j) {
        std::string first;
        for (int run = 0; run < 2; ++run) {
            const int workers = run == 0 ? 1 : 4;
            const auto dir =
                base / (jobs[j].scenario + "_" + std::to_string(run));
            const auto res =
                cli::run_scenario(jobs[j].scenario, jobs[j].cfg, dir.string(),
                                  workers);
            if (res.exit_code != 0 && jobs[j].scenario != "validate") {
                detail = jobs[j].scenario + " reported failures";
                return false;
            }
            const std::string content = slurp((dir / jobs[j].csv).string());
            if (content.empty()) {
                detail = jobs[j].scenario + " produced no CSV";
                return false;
            }
            if (run == 0)
                first = content;
            else if (content != first) {
                detail = jobs[j].scenario + " differs across worker counts";
                return false;
            }
        }
    }
    detail = std::to_string(jobs.size()) + " scenarios byte-identical across "
             "runs and worker counts";
    return true;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
};

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {1, "Morse spectrum oracle", criterion_1},
        {2, "matrix-element oracle", criterion_2},
        {3, "bound-state consistency", criterion_3},
        {4, "thermal baseline", criterion_4},
        {5, "three-level closed forms", criterion_5},
        {6, "blockade reproduction", criterion_6},
        {7, "thermal monotonicity", criterion_7},
        {8, "mean-field vs ladder", criterion_8},
        {9, "amplification suppression", criterion_9},
        {10, "lasing onset and suppression", criterion_10},
        {11, "harmonic-limit trajectory equivalence", criterion_11},
        {12, "determinism and parallelism", criterion_12},
    };

    int selected = 0;
    if (argc > 1)
        selected = std::atoi(argv[1]);

    bool all_pass = true;
    for (const auto& c : criteria) {
        if (selected != 0 && c.id != selected)
            continue;
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
