#include "anharmom/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "anharmom/lasing.hpp"
#include "anharmom/morse.hpp"
#include "anharmom/optics.hpp"
#include "anharmom/oracle.hpp"
#include "anharmom/output.hpp"
#include "anharmom/rates.hpp"
#include "anharmom/steady_state.hpp"

namespace anharmom::cli {

namespace {

using nlohmann::json;

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 1)
        throw ConfigError("sweep: need at least one point");
    if (n == 1)
        return {lo};
    if (!(hi > lo))
        throw ConfigError("sweep: range must be ordered (min < max)");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

morse::MorseParams morse_from(const Config& c)
{
    return morse::MorseParams::make(c.get_double("morse.omega_b"),
                                    c.get_double("morse.delta_omega_b"));
}

rates::BathConfig bath_from(const Config& c)
{
    return rates::BathConfig::make(c.get_double("bath.gamma"),
                                   c.get_double("bath.n_th"));
}

optics::SingleModeParams single_from(const Config& c)
{
    return optics::SingleModeParams::make(c.get_double("single_mode.omega"),
                                          c.get_double("single_mode.kappa"));
}

optics::HybridParams hybrid_from(const Config& c)
{
    return optics::HybridParams::make(
        c.get_double("hybrid.omega_1"), c.get_double("hybrid.omega_2"),
        c.get_double("hybrid.kappa_1"), c.get_double("hybrid.kappa_2"),
        c.get_double("hybrid.f"));
}

optics::SpectralDensity spectrum_from(const Config& c)
{
    const std::string type = c.get_string("spectrum.type");
    if (type == "hybrid")
        return optics::make_spectrum(hybrid_from(c));
    if (type == "single")
        return optics::make_spectrum(single_from(c));
    throw ConfigError("spectrum.type must be 'single' or 'hybrid', got '" + type + "'");
}

int levels_for(const Config& c, const morse::MorseParams& m)
{
    const int requested = c.get_int("solver.levels", 16);
    if (requested < 2)
        throw ConfigError("solver.levels: need at least 2");
    return morse::clamp_truncation(m, requested);
}

void fill_common_defaults(Config& c)
{
    c.set("morse.omega_b", "20");
    c.set("bath.gamma", "0.05");
    c.set("bath.n_th", "0.05");
    c.set("drive.g0", "2");
    c.set("single_mode.omega", "550");
    c.set("single_mode.kappa", "60");
    c.set("hybrid.omega_1", "486");
    c.set("hybrid.omega_2", "550");
    c.set("hybrid.kappa_1", "0.15");
    c.set("hybrid.kappa_2", "60");
    c.set("hybrid.f", "15");
}

const std::vector<std::string> kCommonKeys = {
    "morse.omega_b",     "morse.delta_omega_b", "bath.gamma",
    "bath.n_th",         "drive.g0",            "drive.omega_l",
    "drive.alpha_sq",    "spectrum.type",       "single_mode.omega",
    "single_mode.kappa", "hybrid.omega_1",      "hybrid.omega_2",
    "hybrid.kappa_1",    "hybrid.kappa_2",      "hybrid.f",
    "solver.levels",
};

std::vector<std::string> with_keys(std::vector<std::string> extra)
{
    std::vector<std::string> keys = kCommonKeys;
    keys.insert(keys.end(), extra.begin(), extra.end());
    return keys;
}

struct PointStatus {
    bool ok = true;
    std::string message;
};

json points_json(const std::vector<PointStatus>& status)
{
    json out = json::array();
    for (const auto& s : status) {
        if (s.ok)
            out.push_back("ok");
        else
            out.push_back("failed: " + s.message);
    }
    return out;
}

int count_failures(const std::vector<PointStatus>& status)
{
    int n = 0;
    for (const auto& s : status)
        if (!s.ok)
            ++n;
    return n;
}

struct Bundle {
    std::string out_dir;
    std::vector<std::string> files;

    std::string path(const std::string& name) const
    {
        return (std::filesystem::path(out_dir) / name).string();
    }
    void add_csv(const std::string& name, const CsvTable& table)
    {
        table.write(path(name));
        files.push_back(path(name));
    }
    void add_text(const std::string& name, const std::string& content)
    {
        write_file_atomic(path(name), content);
        files.push_back(path(name));
    }
};

json config_echo(const Config& c)
{
    json echo;
    for (const auto& [k, v] : c.entries())
        echo[k] = v;
    return echo;
}

ScenarioResult finish(Bundle& bundle, const Config& cfg, const std::string& name,
                      const json& derived, const std::vector<PointStatus>& status)
{
    const int failures = count_failures(status);
    json summary;
    summary["scenario"] = name;
    summary["config"] = config_echo(cfg);
    summary["derived"] = derived;
    summary["points"] = points_json(status);
    summary["points_total"] = status.size();
    summary["points_failed"] = failures;
    summary["outputs"] = bundle.files;

    ScenarioResult result;
    result.summary_path = bundle.path("summary.json");
    write_file_atomic(result.summary_path, summary.dump(2) + "\n");
    result.files = bundle.files;
    result.points = static_cast<int>(status.size());
    result.failed_points = failures;
    result.exit_code = failures ? 1 : 0;
    return result;
}

// ---------------------------------------------------------------- blockade

struct BlockadePoint {
    double n_x = std::nan("");
    double g2 = std::nan("");
};

BlockadePoint blockade_point(const morse::MorseParams& m,
                             const optics::SpectralDensity& spec,
                             const rates::DriveConfig& drive,
                             const rates::BathConfig& bath, int K,
                             const Eigen::MatrixXd& elements)
{
    auto ladder = rates::total_rates(rates::raman_rates(m, spec, drive, K), bath);
    const auto res = steady_state::solve(ladder, elements, K);
    return BlockadePoint{res.n_x, res.g2_0};
}

ScenarioResult run_blockade_laser_sweep(const Config& cfg, Bundle& bundle,
                                        int workers, const std::string& scenario,
                                        const std::string& prefix)
{
    cfg.require_known_keys(with_keys({"sweep.omega_l_min", "sweep.omega_l_max",
                                      "sweep.omega_l_points", "sweep.n_th_list"}));
    const auto m = morse_from(cfg);
    const auto spec = spectrum_from(cfg);
    const auto bath = bath_from(cfg);
    const int K = levels_for(cfg, m);
    const auto elements = morse::position_matrix(m, K);
    const double alpha_sq = cfg.get_double("drive.alpha_sq");
    const double g0 = cfg.get_double("drive.g0");
    const auto grid = linspace(cfg.get_double("sweep.omega_l_min"),
                               cfg.get_double("sweep.omega_l_max"),
                               cfg.get_int("sweep.omega_l_points"));

    std::vector<BlockadePoint> pts(grid.size());
    std::vector<PointStatus> status(grid.size());
    parallel_for(static_cast<int>(grid.size()), workers, [&](int i) {
        try {
            pts[i] = blockade_point(
                m, spec, rates::DriveConfig::from_population(grid[i], alpha_sq, g0),
                bath, K, elements);
        } catch (const std::exception& e) {
            status[i] = {false, e.what()};
        }
    });

    CsvTable csv({"omega_l_THz", "n_x", "g2_0"});
    Series s_nx{"n_x", {}, {}}, s_g2{"g2_0", {}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.add_row({grid[i], pts[i].n_x, pts[i].g2});
        s_nx.x.push_back(grid[i]);
        s_nx.y.push_back(pts[i].n_x);
        s_g2.x.push_back(grid[i]);
        s_g2.y.push_back(pts[i].g2);
    }
    bundle.add_csv(prefix + ".csv", csv);
    bundle.add_text(prefix + ".svg",
                    line_chart_svg("Steady state vs laser frequency",
                                   "laser frequency (THz)", "n_x, g2(0)",
                                   {s_nx, s_g2}));

    json derived;
    derived["lambda"] = m.lambda();
    derived["bound_states"] = morse::bound_state_count(m);
    derived["levels"] = K;
    if (cfg.get_string("spectrum.type") == "hybrid") {
        const auto hp = hybrid_from(cfg);
        const auto sd = optics::make_spectrum(hp);
        derived["trough_THz"] = optics::find_trough(sd, 470.0, 500.0);
        derived["fano_linewidth_THz"] = optics::fano_linewidth(hp);
    }
    return finish(bundle, cfg, scenario, derived, status);
}

ScenarioResult run_thermal_sweep(const Config& cfg, Bundle& bundle, int workers)
{
    cfg.require_known_keys(with_keys({"sweep.omega_l_min", "sweep.omega_l_max",
                                      "sweep.omega_l_points", "sweep.n_th_list"}));
    const auto m = morse_from(cfg);
    const auto spec = spectrum_from(cfg);
    const int K = levels_for(cfg, m);
    const auto elements = morse::position_matrix(m, K);
    const double alpha_sq = cfg.get_double("drive.alpha_sq");
    const double g0 = cfg.get_double("drive.g0");
    const double gamma = cfg.get_double("bath.gamma");
    const auto n_ths = cfg.get_double_list("sweep.n_th_list");
    const auto grid = linspace(cfg.get_double("sweep.omega_l_min"),
                               cfg.get_double("sweep.omega_l_max"),
                               cfg.get_int("sweep.omega_l_points"));

    const int total = static_cast<int>(n_ths.size() * grid.size());
    std::vector<BlockadePoint> pts(total);
    std::vector<PointStatus> status(total);
    parallel_for(total, workers, [&](int idx) {
        const int t = idx / static_cast<int>(grid.size());
        const int i = idx % static_cast<int>(grid.size());
        try {
            pts[idx] = blockade_point(
                m, spec, rates::DriveConfig::from_population(grid[i], alpha_sq, g0),
                rates::BathConfig::make(gamma, n_ths[t]), K, elements);
        } catch (const std::exception& e) {
            status[idx] = {false, e.what()};
        }
    });

    CsvTable csv({"n_th", "omega_l_THz", "n_x", "g2_0"});
    std::vector<Series> nx_series, g2_series;
    json minima = json::array();
    for (std::size_t t = 0; t < n_ths.size(); ++t) {
        Series snx{"n_x n_th=" + format_value(n_ths[t]), {}, {}};
        Series sg2{"g2 n_th=" + format_value(n_ths[t]), {}, {}};
        double min_nx = std::numeric_limits<double>::infinity(), min_g2 = min_nx;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& p = pts[t * grid.size() + i];
            csv.add_row({n_ths[t], grid[i], p.n_x, p.g2});
            snx.x.push_back(grid[i]);
            snx.y.push_back(p.n_x);
            sg2.x.push_back(grid[i]);
            sg2.y.push_back(p.g2);
            min_nx = std::min(min_nx, p.n_x);
            min_g2 = std::min(min_g2, p.g2);
        }
        nx_series.push_back(std::move(snx));
        g2_series.push_back(std::move(sg2));
        minima.push_back({{"n_th", n_ths[t]}, {"min_n_x", min_nx}, {"min_g2", min_g2}});
    }
    bundle.add_csv("thermal_sweep.csv", csv);
    bundle.add_text("thermal_sweep_nx.svg",
                    line_chart_svg("Population vs laser frequency",
                                   "laser frequency (THz)", "n_x", nx_series));
    bundle.add_text("thermal_sweep_g2.svg",
                    line_chart_svg("Correlations vs laser frequency",
                                   "laser frequency (THz)", "g2(0)", g2_series));

    json derived;
    derived["lambda"] = m.lambda();
    derived["levels"] = K;
    derived["sweep_minima"] = minima;
    return finish(bundle, cfg, "thermal-sweep", derived, status);
}

ScenarioResult run_blockade_map(const Config& cfg, Bundle& bundle, int workers,
                                const std::string& scenario,
                                const std::string& prefix)
{
    cfg.require_known_keys(with_keys(
        {"sweep.delta_min", "sweep.delta_max", "sweep.delta_points",
         "sweep.alpha_sq_min", "sweep.alpha_sq_max", "sweep.alpha_sq_points"}));
    const double omega_b = cfg.get_double("morse.omega_b");
    const auto spec = spectrum_from(cfg);
    const auto bath = bath_from(cfg);
    const double omega_l = cfg.get_double("drive.omega_l");
    const double g0 = cfg.get_double("drive.g0");
    const auto deltas = linspace(cfg.get_double("sweep.delta_min"),
                                 cfg.get_double("sweep.delta_max"),
                                 cfg.get_int("sweep.delta_points"));
    const auto alphas = linspace(cfg.get_double("sweep.alpha_sq_min"),
                                 cfg.get_double("sweep.alpha_sq_max"),
                                 cfg.get_int("sweep.alpha_sq_points"));

    const int nd = static_cast<int>(deltas.size());
    const int na = static_cast<int>(alphas.size());
    std::vector<BlockadePoint> pts(nd * na);
    std::vector<PointStatus> status(nd * na);
    parallel_for(nd * na, workers, [&](int idx) {
        const int di = idx / na;
        const int ai = idx % na;
        try {
            const auto m = morse::MorseParams::make(omega_b, deltas[di]);
            const int K = levels_for(cfg, m);
            const auto elements = morse::position_matrix(m, K);
            pts[idx] = blockade_point(
                m, spec, rates::DriveConfig::from_population(omega_l, alphas[ai], g0),
                bath, K, elements);
        } catch (const std::exception& e) {
            status[idx] = {false, e.what()};
        }
    });

    CsvTable csv({"delta_omega_b_THz", "alpha_sq", "n_x", "g2_0"});
    std::vector<std::vector<double>> g2_map(na, std::vector<double>(nd)),
        nx_map(na, std::vector<double>(nd));
    for (int di = 0; di < nd; ++di)
        for (int ai = 0; ai < na; ++ai) {
            const auto& p = pts[di * na + ai];
            csv.add_row({deltas[di], alphas[ai], p.n_x, p.g2});
            g2_map[ai][di] = p.g2;
            nx_map[ai][di] = p.n_x;
        }
    bundle.add_csv(prefix + ".csv", csv);
    bundle.add_text(prefix + "_g2.svg",
                    heatmap_svg("g2(0) map", "anharmonicity (THz)",
                                "cavity population", deltas, alphas, g2_map));
    bundle.add_text(prefix + "_nx.svg",
                    heatmap_svg("n_x map", "anharmonicity (THz)",
                                "cavity population", deltas, alphas, nx_map));

    json derived;
    derived["omega_l_THz"] = omega_l;
    if (cfg.get_string("spectrum.type") == "hybrid") {
        const auto hp = hybrid_from(cfg);
        derived["trough_THz"] = optics::find_trough(optics::make_spectrum(hp), 470.0, 500.0);
    }
    double min_g2 = std::numeric_limits<double>::infinity();
    for (const auto& p : pts)
        if (std::isfinite(p.g2))
            min_g2 = std::min(min_g2, p.g2);
    derived["min_g2"] = min_g2;
    return finish(bundle, cfg, scenario, derived, status);
}

// ------------------------------------------------------------ amplification

ScenarioResult run_amplification(const Config& cfg, Bundle& bundle, int workers)
{
    cfg.require_known_keys(with_keys(
        {"sweep.alpha_sq_min", "sweep.alpha_sq_max", "sweep.alpha_sq_points",
         "sweep.delta_list", "solver.levels_cap"}));
    const double omega_b = cfg.get_double("morse.omega_b");
    const auto spec = spectrum_from(cfg);
    const auto bath = bath_from(cfg);
    const double omega_l = cfg.get_double("drive.omega_l");
    const double g0 = cfg.get_double("drive.g0");
    const int cap = cfg.get_int("solver.levels_cap", 120);
    const auto deltas = cfg.get_double_list("sweep.delta_list");
    const auto alphas = linspace(cfg.get_double("sweep.alpha_sq_min"),
                                 cfg.get_double("sweep.alpha_sq_max"),
                                 cfg.get_int("sweep.alpha_sq_points"));

    const int nd = static_cast<int>(deltas.size());
    const int na = static_cast<int>(alphas.size());

    struct AmpPoint {
        double ladder = std::nan("");
        double meanfield = std::nan("");
    };
    std::vector<AmpPoint> pts(nd * na);
    std::vector<double> harmonic_ref(na, std::nan(""));
    std::vector<PointStatus> status(nd * na + na);

    parallel_for(nd * na + na, workers, [&](int idx) {
        try {
            if (idx < nd * na) {
                const int di = idx / na;
                const int ai = idx % na;
                const auto m = morse::MorseParams::make(omega_b, deltas[di]);
                const int K = morse::clamp_truncation(m, cap);
                const auto elements = morse::position_matrix(m, K);
                const auto drive =
                    rates::DriveConfig::from_population(omega_l, alphas[ai], g0);
                auto ladder =
                    rates::total_rates(rates::raman_rates(m, spec, drive, K), bath);
                const auto p = steady_state::solve_populations(ladder, elements, K);
                pts[idx].ladder = steady_state::mechanical_population(p, elements);
                const auto lin = rates::linearized_params(m, spec, drive);
                pts[idx].meanfield =
                    lasing::meanfield_steady(lasing::MeanFieldParams::from_linearized(
                                                 lin, drive, deltas[di], bath))
                        .n_x;
            } else {
                // Harmonic reference: diverges at the linear instability, so
                // drives at or beyond the threshold report infinity.
                const int ai = idx - nd * na;
                const auto mh = morse::MorseParams::make(omega_b, 0.0);
                const auto drive =
                    rates::DriveConfig::from_population(omega_l, alphas[ai], g0);
                const auto lin = rates::linearized_params(mh, spec, drive);
                if (bath.gamma + lin.Gamma_minus - lin.Gamma_plus > 0.0)
                    harmonic_ref[ai] =
                        lasing::meanfield_steady(
                            lasing::MeanFieldParams::from_linearized(lin, drive,
                                                                     0.0, bath))
                            .n_x;
                else
                    harmonic_ref[ai] = std::numeric_limits<double>::infinity();
            }
        } catch (const std::exception& e) {
            status[idx] = {false, e.what()};
        }
    });

    std::vector<std::string> cols{"alpha_sq"};
    for (double d : deltas) {
        cols.push_back("nx_ladder_dwb_" + format_value(d));
        cols.push_back("nx_meanfield_dwb_" + format_value(d));
    }
    cols.push_back("nx_harmonic_meanfield");
    CsvTable csv(cols);
    std::vector<Series> series;
    for (int di = 0; di < nd; ++di) {
        series.push_back({"ladder " + format_value(deltas[di]), {}, {}});
        series.push_back({"meanfield " + format_value(deltas[di]), {}, {}});
    }
    series.push_back({"harmonic", {}, {}});
    for (int ai = 0; ai < na; ++ai) {
        std::vector<double> row{alphas[ai]};
        for (int di = 0; di < nd; ++di) {
            row.push_back(pts[di * na + ai].ladder);
            row.push_back(pts[di * na + ai].meanfield);
            series[2 * di].x.push_back(alphas[ai]);
            series[2 * di].y.push_back(pts[di * na + ai].ladder);
            series[2 * di + 1].x.push_back(alphas[ai]);
            series[2 * di + 1].y.push_back(pts[di * na + ai].meanfield);
        }
        row.push_back(harmonic_ref[ai]);
        series.back().x.push_back(alphas[ai]);
        series.back().y.push_back(harmonic_ref[ai]);
        csv.add_row(row);
    }
    bundle.add_csv("amplification.csv", csv);
    bundle.add_text("amplification.svg",
                    line_chart_svg("Mechanical population vs drive",
                                   "cavity population", "n_x", series, true));

    // Harmonic instability point of the linear model.
    const double sp = spec(omega_l - omega_b), sm = spec(omega_l + omega_b);
    json derived;
    derived["harmonic_threshold_alpha_sq"] =
        bath_from(cfg).gamma / (g0 * g0 * (sp - sm));
    return finish(bundle, cfg, "amplification", derived, status);
}

// ------------------------------------------------------------------ lasing

lasing::TrajectorySystem trajectory_system(const Config& cfg, double delta_omega_b,
                                           double alpha_sq)
{
    const auto sm = single_from(cfg);
    const double omega_b = cfg.get_double("morse.omega_b");
    lasing::TrajectorySystem sys;
    sys.Delta = sm.omega_1 - cfg.get_double("drive.omega_l");
    sys.kappa = sm.kappa_1;
    sys.Omega = lasing::TrajectorySystem::drive_for_population(alpha_sq, sys.Delta,
                                                               sys.kappa);
    sys.g0 = cfg.get_double("drive.g0");
    sys.gamma = cfg.get_double("bath.gamma");
    sys.omega_b = omega_b;
    if (delta_omega_b > 0.0) {
        sys.force = lasing::ForceModel::Morse;
        sys.a_tilde = std::sqrt(delta_omega_b / omega_b);
    }
    return sys;
}

lasing::IntegrationOptions integration_options(const Config& cfg)
{
    lasing::IntegrationOptions opt;
    opt.tau_max = cfg.get_double("trajectory.tau_max", 12000.0);
    const int steps = cfg.get_int("trajectory.steps_per_period", 1000);
    opt.dtau = 2.0 * std::numbers::pi / steps;
    opt.sample_stride = cfg.get_int("trajectory.sample_stride", 10);
    opt.settle_fraction = cfg.get_double("trajectory.settle_fraction", 0.5);
    return opt;
}

ScenarioResult run_lasing_map(const Config& cfg, Bundle& bundle, int workers)
{
    cfg.require_known_keys(with_keys(
        {"sweep.alpha_sq_min", "sweep.alpha_sq_max", "sweep.alpha_sq_points",
         "sweep.delta_list", "trajectory.tau_max", "trajectory.steps_per_period",
         "trajectory.sample_stride", "trajectory.settle_fraction"}));
    std::vector<double> deltas{0.0};
    for (double d : cfg.get_double_list("sweep.delta_list"))
        deltas.push_back(d);
    const auto alphas = linspace(cfg.get_double("sweep.alpha_sq_min"),
                                 cfg.get_double("sweep.alpha_sq_max"),
                                 cfg.get_int("sweep.alpha_sq_points"));
    const auto opt = integration_options(cfg);

    const int nd = static_cast<int>(deltas.size());
    const int na = static_cast<int>(alphas.size());
    struct LasingPoint {
        double sigma = std::nan("");
        double n_coh = std::nan("");
        double x_mean = std::nan("");
        double realized = std::nan("");
        std::string state = "failed";
    };
    std::vector<LasingPoint> pts(nd * na);
    std::vector<PointStatus> status(nd * na);
    parallel_for(nd * na, workers, [&](int idx) {
        const int di = idx / na;
        const int ai = idx % na;
        try {
            const auto res = lasing::integrate_trajectory(
                trajectory_system(cfg, deltas[di], alphas[ai]), opt);
            auto& p = pts[idx];
            p.state = res.status == lasing::TrajectoryStatus::Ok ? "ok"
                      : res.status == lasing::TrajectoryStatus::Escaped
                          ? "escaped"
                          : "diverged";
            if (res.status == lasing::TrajectoryStatus::Ok) {
                p.sigma = res.sigma_x;
                p.n_coh = res.n_coh;
                p.x_mean = res.x_mean;
                p.realized = res.realized_population;
            } else {
                status[idx] = {false, p.state + " at tau=" +
                                          format_value(res.escape_tau)};
            }
        } catch (const std::exception& e) {
            status[idx] = {false, e.what()};
        }
    });

    CsvTable csv({"delta_omega_b_THz", "alpha_sq", "sigma_x", "n_coh", "x_mean",
                  "realized_population", "state"});
    std::vector<Series> series;
    for (int di = 0; di < nd; ++di) {
        Series s{deltas[di] == 0.0 ? std::string("harmonic")
                                   : "dwb " + format_value(deltas[di]),
                 {},
                 {}};
        for (int ai = 0; ai < na; ++ai) {
            const auto& p = pts[di * na + ai];
            csv.add_row_cells({format_value(deltas[di]), format_value(alphas[ai]),
                               format_value(p.sigma), format_value(p.n_coh),
                               format_value(p.x_mean), format_value(p.realized),
                               p.state});
            s.x.push_back(alphas[ai]);
            s.y.push_back(p.sigma);
        }
        series.push_back(std::move(s));
    }
    bundle.add_csv("lasing_map.csv", csv);
    bundle.add_text("lasing_map.svg",
                    line_chart_svg("Coherent oscillation amplitude",
                                   "cavity population", "sigma_x (zpf)", series));

    json derived = json::object();
    json onsets = json::object();
    for (int di = 0; di < nd; ++di) {
        double onset = std::nan("");
        for (int ai = 0; ai < na; ++ai)
            if (pts[di * na + ai].sigma > 0.1) {
                onset = alphas[ai];
                break;
            }
        onsets[series[di].label] = onset;
    }
    derived["onset_alpha_sq"] = onsets;
    return finish(bundle, cfg, "lasing-map", derived, status);
}

// ---------------------------------------------------------------- validate

ScenarioResult run_validate(const Config& cfg, Bundle& bundle, int workers)
{
    cfg.require_known_keys(with_keys({"validate.grid_points"}));
    const int grid_points = cfg.get_int("validate.grid_points", 3000);

    struct Check {
        std::string name;
        double metric = std::nan("");
        double threshold = 0.0;
        bool pass = false;
    };
    std::vector<Check> checks;

    auto spectrum_check = [&](double dwb, int k_max, int n_pts) {
        Check c{"morse-spectrum-dwb-" + format_value(dwb), 0.0, 1e-6, false};
        try {
            const auto m = morse::MorseParams::make(20.0, dwb);
            const auto sol =
                oracle::grid_diagonalize(m, oracle::auto_grid(m, k_max + 1, n_pts),
                                         k_max + 1);
            double worst = 0.0;
            for (int k = 0; k <= k_max; ++k) {
                const double exact = morse::eigenfrequency(m, k);
                worst = std::max(worst,
                                 std::abs(sol.eigenvalues[k] - exact) / exact);
            }
            c.metric = worst;
            c.pass = worst < c.threshold;
        } catch (const std::exception&) {
        }
        return c;
    };

    // Level oracle at the three standard anharmonicities, k up to lambda/2.
    checks.push_back(spectrum_check(0.1, 49, 2 * grid_points));
    checks.push_back(spectrum_check(0.2, 24, grid_points));
    checks.push_back(spectrum_check(2.0, 2, grid_points));

    {
        Check c{"position-elements-dwb-0.2", 0.0, 1e-6, false};
        try {
            const auto m = morse::MorseParams::make(20.0, 0.2);
            const auto sol =
                oracle::grid_diagonalize(m, oracle::auto_grid(m, 9, grid_points), 9);
            const auto num = oracle::numeric_position_elements(m, sol);
            double worst = 0.0;
            for (int n = 0; n < 9; ++n)
                for (int mm = 0; mm < 9; ++mm)
                    worst = std::max(worst,
                                     std::abs(std::abs(num(n, mm)) -
                                              std::abs(morse::position_element(m, n, mm))));
            c.metric = worst;
            c.pass = worst < c.threshold;
        } catch (const std::exception&) {
        }
        checks.push_back(c);
    }

    {
        Check c{"harmonic-limit-neighbor-element", 0.0, 1e-3, false};
        const auto m = morse::MorseParams::make(20.0, 20.0 * 1e-8);
        double worst = 0.0;
        for (int n = 0; n < 10; ++n)
            worst = std::max(worst, std::abs(morse::position_element(m, n, n + 1) -
                                             std::sqrt(n + 1.0)));
        c.metric = worst;
        c.pass = worst < c.threshold;
        checks.push_back(c);
    }

    {
        Check c{"rate-ladder-evolution-vs-stationary", 0.0, 1e-8, false};
        try {
            const auto m = morse::MorseParams::make(20.0, 2.0);
            const auto spec = optics::make_spectrum(hybrid_from(cfg));
            const auto bath = bath_from(cfg);
            const int K = 5;
            const auto elements = morse::position_matrix(m, K);
            auto ladder = rates::total_rates(
                rates::raman_rates(
                    m, spec, rates::DriveConfig::from_population(501.0, 4.0, 2.0), K),
                bath);
            const auto stationary = steady_state::solve_populations(ladder, elements, K);
            Eigen::VectorXd p0 = Eigen::VectorXd::Zero(K);
            p0(0) = 1.0;
            const double t_max = 50.0 / bath.gamma;
            const auto evo =
                oracle::evolve_rate_ladder(ladder, elements, p0, t_max, 1e-3, 1000);
            c.metric = (evo.populations.back() - stationary).lpNorm<Eigen::Infinity>();
            c.pass = c.metric < c.threshold && evo.max_sum_drift < 1e-9;
        } catch (const std::exception&) {
        }
        checks.push_back(c);
    }

    {
        Check c{"neighbor-vs-all-pairs-population", 0.0, 0.05, false};
        try {
            const auto m = morse::MorseParams::make(20.0, 0.2);
            const auto spec = optics::make_spectrum(hybrid_from(cfg));
            const auto bath = bath_from(cfg);
            const int K = morse::clamp_truncation(m, 16);
            const auto elements = morse::position_matrix(m, K);
            const auto drive = rates::DriveConfig::from_population(492.0, 0.25, 2.0);
            auto ladder = rates::total_rates(rates::raman_rates(m, spec, drive, K), bath);
            const auto p_neighbor = steady_state::solve_populations(ladder, elements, K);
            const auto p_all = oracle::steady_state_all_pairs(
                rates::all_pair_rate_matrix(m, spec, drive, K), elements, bath);
            const double nx_n = steady_state::mechanical_population(p_neighbor, elements);
            const double nx_a = steady_state::mechanical_population(p_all, elements);
            c.metric = std::abs(nx_n - nx_a) / nx_a;
            c.pass = c.metric < c.threshold;
        } catch (const std::exception&) {
        }
        checks.push_back(c);
    }

    (void)workers;

    CsvTable csv({"check", "metric", "threshold", "status"});
    bool all_pass = true;
    for (const auto& c : checks) {
        csv.add_row_cells({c.name, format_value(c.metric), format_value(c.threshold),
                           c.pass ? "pass" : "fail"});
        all_pass = all_pass && c.pass;
        std::printf("%-40s %-10s metric=%s\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", format_value(c.metric).c_str());
    }
    bundle.add_csv("validate.csv", csv);

    std::vector<PointStatus> status(checks.size());
    for (std::size_t i = 0; i < checks.size(); ++i)
        if (!checks[i].pass)
            status[i] = {false, checks[i].name};
    json derived;
    derived["all_pass"] = all_pass;
    return finish(bundle, cfg, "validate", derived, status);
}

} // namespace

std::vector<std::string> scenario_names()
{
    return {"blockade-laser-sweep", "blockade-map",  "thermal-sweep",
            "laser-freq-alt",       "amplification", "lasing-map",
            "validate"};
}

Config scenario_defaults(const std::string& name)
{
    Config c;
    fill_common_defaults(c);
    if (name == "blockade-laser-sweep") {
        c.set("morse.delta_omega_b", "2");
        c.set("spectrum.type", "hybrid");
        c.set("drive.alpha_sq", "4");
        c.set("solver.levels", "16");
        c.set("sweep.omega_l_min", "490");
        c.set("sweep.omega_l_max", "510");
        c.set("sweep.omega_l_points", "401");
    } else if (name == "thermal-sweep") {
        c.set("morse.delta_omega_b", "2");
        c.set("spectrum.type", "hybrid");
        c.set("drive.alpha_sq", "4");
        c.set("solver.levels", "16");
        c.set("sweep.omega_l_min", "480");
        c.set("sweep.omega_l_max", "510");
        c.set("sweep.omega_l_points", "601");
        c.set("sweep.n_th_list", "0.05, 0.02, 0.01");
    } else if (name == "blockade-map" || name == "laser-freq-alt") {
        c.set("morse.delta_omega_b", "2");
        c.set("spectrum.type", "hybrid");
        c.set("drive.omega_l", name == "blockade-map" ? "501" : "496");
        c.set("solver.levels", "16");
        c.set("sweep.delta_min", "0.1");
        c.set("sweep.delta_max", "2.0");
        c.set("sweep.delta_points", "39");
        c.set("sweep.alpha_sq_min", "0.1");
        c.set("sweep.alpha_sq_max", "4.0");
        c.set("sweep.alpha_sq_points", "40");
    } else if (name == "amplification") {
        c.set("morse.delta_omega_b", "0.1");
        c.set("spectrum.type", "single");
        c.set("drive.omega_l", "570");
        c.set("solver.levels_cap", "120");
        c.set("sweep.alpha_sq_min", "0.05");
        c.set("sweep.alpha_sq_max", "3.0");
        c.set("sweep.alpha_sq_points", "60");
        c.set("sweep.delta_list", "0.1, 0.2");
    } else if (name == "lasing-map") {
        c.set("morse.delta_omega_b", "0.1");
        c.set("spectrum.type", "single");
        c.set("drive.omega_l", "570");
        c.set("sweep.alpha_sq_min", "0.05");
        c.set("sweep.alpha_sq_max", "2.95");
        c.set("sweep.alpha_sq_points", "30");
        c.set("sweep.delta_list", "0.1, 0.2");
        c.set("trajectory.tau_max", "12000");
        c.set("trajectory.steps_per_period", "1000");
        c.set("trajectory.sample_stride", "10");
        c.set("trajectory.settle_fraction", "0.5");
    } else if (name == "validate") {
        c.set("morse.delta_omega_b", "2");
        c.set("spectrum.type", "hybrid");
        c.set("validate.grid_points", "3000");
    } else {
        throw ConfigError("unknown scenario '" + name + "'");
    }
    return c;
}

ScenarioResult run_scenario(const std::string& name, const Config& user_config,
                            const std::string& out_dir, int workers)
{
    Config cfg = scenario_defaults(name);
    for (const auto& [k, v] : user_config.entries())
        cfg.set(k, v);
    const int w = resolve_workers(workers);

    Bundle bundle{out_dir, {}};
    std::filesystem::create_directories(out_dir);

    if (name == "blockade-laser-sweep")
        return run_blockade_laser_sweep(cfg, bundle, w, name, "blockade_laser_sweep");
    if (name == "thermal-sweep")
        return run_thermal_sweep(cfg, bundle, w);
    if (name == "blockade-map")
        return run_blockade_map(cfg, bundle, w, name, "blockade_map");
    if (name == "laser-freq-alt")
        return run_blockade_map(cfg, bundle, w, name, "laser_freq_alt");
    if (name == "amplification")
        return run_amplification(cfg, bundle, w);
    if (name == "lasing-map")
        return run_lasing_map(cfg, bundle, w);
    if (name == "validate")
        return run_validate(cfg, bundle, w);
    throw ConfigError("unknown scenario '" + name + "'");
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn)
{
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& t : pool)
        t.join();
}

int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("ANHARM_OM_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp<unsigned>(hw, 1, 8));
}

} // namespace anharmom::cli
