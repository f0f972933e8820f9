// qta: reflectometry simulation and Trojan-horse audit for QKD apparatuses.
//
// Subcommands: otdr, ofdr, info-gain, stats, audit, sweep. Inputs are circuit
// and scenario JSON files; outputs are CSV traces and JSON reports. All
// output is deterministic for fixed inputs and QTA_SEED.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qta/qta.hpp"

namespace {

constexpr int kExitSimulationError = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitPathExplosion = 3;

std::uint64_t monte_carlo_seed() {
    const char* env = std::getenv("QTA_SEED");
    if (env == nullptr || *env == '\0') return 0;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used, 10);
        qta::require(env[used] == '\0', qta::errc::invalid_parameter, "trailing characters");
        return v;
    } catch (const std::exception&) {
        qta::fail(qta::errc::invalid_parameter,
                  std::string("QTA_SEED must be an unsigned integer, got \"") + env + "\"");
    }
}

std::vector<qta::ReflectionEvent> simulate_events(const qta::OpticalCircuit& circuit, int max_order,
                                                  double floor_db) {
    std::vector<qta::ReflectionEvent> events =
        qta::enumerate_reflection_paths(circuit, max_order, floor_db);
    if (circuit.interferometer()) {
        events = qta::expand_interferometer(events, *circuit.interferometer());
    }
    return events;
}

void emit(const std::optional<std::string>& out_path, const std::string& payload) {
    if (out_path) {
        qta::write_file_atomic(*out_path, payload);
    } else {
        std::cout << payload;
    }
}

struct OtdrArgs {
    std::string circuit_file;
    double pulse_width_m = 1.0;
    int max_order = 3;
    double floor_db = -200.0;
    double grid_spacing_m = 0.0;  // 0 = pulse/4
    double min_prominence_db = 3.0;
    double noise_sigma = 0.0;
    std::string out_csv;
};

int run_otdr(const OtdrArgs& a) {
    const qta::OpticalCircuit circuit = qta::load_circuit(a.circuit_file);
    const auto events = simulate_events(circuit, a.max_order, a.floor_db);
    const auto spans = qta::rayleigh_spans(circuit);

    qta::SamplingGrid grid = qta::make_otdr_grid(events, a.pulse_width_m, spans);
    if (a.grid_spacing_m > 0.0) {
        const double cover = static_cast<double>(grid.samples - 1) * grid.spacing_m;
        grid.spacing_m = a.grid_spacing_m;
        grid.samples = static_cast<std::size_t>(std::ceil(cover / grid.spacing_m)) + 1;
    }
    qta::TraceOptions options;
    options.noise_sigma_linear = a.noise_sigma;
    options.noise_seed = monte_carlo_seed();

    const qta::Trace trace = qta::synthesize_otdr(events, a.pulse_width_m, grid, spans, options);
    qta::write_file_atomic(a.out_csv, qta::trace_to_csv(trace));
    std::cout << qta::peaks_to_text(qta::detect_peaks(trace, a.min_prominence_db));
    return 0;
}

struct OfdrArgs {
    std::string circuit_file;
    qta::OfdrSweep sweep;
    double coherence_m = 1000.0;
    double lo_db = -30.0;
    double group_index = qta::kDefaultGroupIndex;
    int max_order = 3;
    double floor_db = -200.0;
    double min_prominence_db = 3.0;
    double noise_sigma = 0.0;
    std::string out_csv;
};

int run_ofdr(const OfdrArgs& a) {
    const qta::OpticalCircuit circuit = qta::load_circuit(a.circuit_file);
    const auto events = simulate_events(circuit, a.max_order, a.floor_db);
    qta::TraceOptions options;
    options.noise_floor_db = -100.0;
    options.noise_sigma_linear = a.noise_sigma;
    options.noise_seed = monte_carlo_seed();

    const qta::Trace trace =
        qta::synthesize_ofdr(events, a.sweep, a.coherence_m, a.lo_db, a.group_index, options);
    qta::write_file_atomic(a.out_csv, qta::trace_to_csv(trace));
    std::cout << qta::peaks_to_text(qta::detect_peaks(trace, a.min_prominence_db));
    return 0;
}

int run_info_gain(double mu_value, bool randomized) {
    const qta::MeanPhotonNumber mu(mu_value);
    const double trojan = qta::trojan_info(mu).bits();
    const double reduced = qta::reduced_info(mu).bits();
    const qta::json out{{"mu", mu_value},
                        {"trojan", trojan},
                        {"reduced", reduced},
                        {"ratio", mu_value > 0.0 ? trojan / reduced : 0.0},
                        {"phase_randomization", randomized},
                        {"selected", randomized ? reduced : trojan}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct StatsArgs {
    double poisson_mu = -1.0;
    int fock_n = -1;
    std::string in_file;
    double attenuate_t = 0.0;  // 0 = no attenuation
    std::uint64_t shots = 0;   // 0 = exact
    int n_max = -1;            // poisson truncation; -1 = auto
    int cap = qta::kDefaultTruncationCap;
    std::optional<std::string> out;
};

int run_stats(const StatsArgs& a) {
    const int sources = (a.poisson_mu >= 0.0) + (a.fock_n >= 0) + (!a.in_file.empty());
    qta::require(sources == 1, qta::errc::invalid_parameter,
                 "exactly one of --poisson-mu, --fock-n, --in is required");
    qta::require(a.shots == 0 || (a.fock_n >= 0 && a.attenuate_t > 0.0), qta::errc::invalid_parameter,
                 "--shots needs --fock-n and --attenuate");

    std::optional<qta::PhotonNumberDistribution> dist;
    if (a.fock_n >= 0) {
        dist = qta::PhotonNumberDistribution::fock(a.fock_n);
    } else if (!a.in_file.empty()) {
        dist = qta::distribution_from_json(qta::parse_json_file(a.in_file));
    } else if (a.n_max >= 0) {
        dist = qta::poisson_distribution(qta::MeanPhotonNumber(a.poisson_mu), a.n_max);
    } else if (a.attenuate_t > 0.0 &&
               a.poisson_mu + 12.0 * std::sqrt(a.poisson_mu) + 32.0 > static_cast<double>(a.cap)) {
        // too wide to materialize: thin in closed form, Poisson(mu t)
        const qta::TransmissionFactor t(a.attenuate_t);
        dist = qta::poisson_distribution_auto(qta::MeanPhotonNumber(a.poisson_mu * t.value()), a.cap);
        const std::string payload = a.out && a.out->ends_with(".csv")
                                        ? qta::distribution_to_csv(*dist)
                                        : qta::distribution_to_json(*dist).dump(2) + "\n";
        emit(a.out, payload);
        if (a.out) {
            std::cout << "mean " << qta::format_g9(dist->mean()) << "\n";
        }
        return 0;
    } else {
        dist = qta::poisson_distribution_auto(qta::MeanPhotonNumber(a.poisson_mu), a.cap);
    }

    std::string summary;
    if (a.attenuate_t > 0.0) {
        const qta::TransmissionFactor t(a.attenuate_t);
        summary += "multi_photon_exact " +
                   qta::format_g9(qta::multi_photon_prob_exact(*dist, t)) + "\n";
        summary += "multi_photon_leading " +
                   qta::format_g9(qta::multi_photon_prob_leading(*dist, t)) + "\n";
        if (a.shots > 0) {
            dist = qta::monte_carlo_thin(a.fock_n, t, a.shots, monte_carlo_seed());
        } else {
            dist = qta::attenuate(*dist, t);
        }
    }
    summary = "mean " + qta::format_g9(dist->mean()) + "\n" + summary;

    const std::string payload = a.out && a.out->ends_with(".csv")
                                    ? qta::distribution_to_csv(*dist)
                                    : qta::distribution_to_json(*dist).dump(2) + "\n";
    emit(a.out, payload);
    if (a.out) std::cout << summary;
    return 0;
}

int run_audit(const std::string& scenario_file, const std::optional<std::string>& out_json) {
    const qta::LoadedScenario loaded = qta::load_scenario(scenario_file);
    const qta::AuditReport report = qta::run_audit(loaded.scenario, loaded.options);
    if (out_json) {
        qta::write_file_atomic(*out_json, qta::report_to_json(report).dump(2) + "\n");
        std::cout << qta::report_to_text(report);
    } else {
        std::cout << qta::report_to_json(report).dump(2) << "\n";
    }
    return 0;
}

struct SweepArgs {
    double mu_min = 1e-3;
    double mu_max = 10.0;
    std::size_t points = 100;
    bool log_spacing = false;
    std::string scenario_file;
    std::optional<std::string> out;
};

int run_sweep(const SweepArgs& a) {
    qta::require(a.points >= 1, qta::errc::invalid_parameter, "--points must be >= 1");
    qta::require(a.mu_max >= a.mu_min && a.mu_min >= 0.0, qta::errc::invalid_parameter,
                 "need 0 <= --mu-min <= --mu-max");
    qta::require(!a.log_spacing || a.mu_min > 0.0, qta::errc::invalid_parameter,
                 "--log needs --mu-min > 0");
    std::vector<double> grid;
    grid.reserve(a.points);
    for (std::size_t i = 0; i < a.points; ++i) {
        const double frac = a.points == 1 ? 0.0
                                          : static_cast<double>(i) / static_cast<double>(a.points - 1);
        grid.push_back(a.log_spacing
                           ? a.mu_min * std::pow(a.mu_max / a.mu_min, frac)
                           : a.mu_min + (a.mu_max - a.mu_min) * frac);
    }
    std::string payload;
    if (a.scenario_file.empty()) {
        payload = qta::info_sweep_to_csv(qta::info_gain_sweep(grid));
    } else {
        const qta::LoadedScenario loaded = qta::load_scenario(a.scenario_file);
        payload = qta::pa_sweep_to_csv(qta::pa_budget_sweep(loaded.scenario, grid, loaded.options));
    }
    emit(a.out, payload);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"Trojan-horse attack audit toolkit for QKD optical apparatuses"};
    app.require_subcommand(1);

    OtdrArgs otdr;
    CLI::App* otdr_cmd = app.add_subcommand("otdr", "Simulate a pulsed reflectometry trace");
    otdr_cmd->add_option("--circuit", otdr.circuit_file, "circuit JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    otdr_cmd->add_option("--pulse-width-m", otdr.pulse_width_m, "probe pulse width in meters");
    otdr_cmd->add_option("--max-order", otdr.max_order, "maximum reflections per path");
    otdr_cmd->add_option("--floor-db", otdr.floor_db, "discard paths weaker than this");
    otdr_cmd->add_option("--grid-spacing-m", otdr.grid_spacing_m, "trace sample spacing");
    otdr_cmd->add_option("--min-prominence-db", otdr.min_prominence_db, "peak detection threshold");
    otdr_cmd->add_option("--noise-sigma", otdr.noise_sigma, "additive linear-power noise sigma");
    otdr_cmd->add_option("--out", otdr.out_csv, "trace CSV output path")->required();

    OfdrArgs ofdr;
    CLI::App* ofdr_cmd = app.add_subcommand("ofdr", "Simulate a swept-laser heterodyne trace");
    ofdr_cmd->add_option("--circuit", ofdr.circuit_file, "circuit JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    ofdr_cmd->add_option("--sweep-rate", ofdr.sweep.sweep_rate_hz_per_s, "optical sweep rate, Hz/s");
    ofdr_cmd->add_option("--duration-s", ofdr.sweep.duration_s, "sweep duration, s");
    ofdr_cmd->add_option("--sample-rate-hz", ofdr.sweep.sample_rate_hz, "detector sample rate, Hz");
    ofdr_cmd->add_option("--coherence-m", ofdr.coherence_m, "laser coherence length, m");
    ofdr_cmd->add_option("--lo-db", ofdr.lo_db, "local-oscillator reflectance, dB");
    ofdr_cmd->add_option("--group-index", ofdr.group_index, "fiber group index");
    ofdr_cmd->add_option("--max-order", ofdr.max_order, "maximum reflections per path");
    ofdr_cmd->add_option("--floor-db", ofdr.floor_db, "discard paths weaker than this");
    ofdr_cmd->add_option("--min-prominence-db", ofdr.min_prominence_db, "peak detection threshold");
    ofdr_cmd->add_option("--noise-sigma", ofdr.noise_sigma, "additive linear-power noise sigma");
    ofdr_cmd->add_option("--out", ofdr.out_csv, "trace CSV output path")->required();

    double info_mu = 0.0;
    bool info_randomized = false;
    CLI::App* info_cmd = app.add_subcommand("info-gain", "Eve's information bounds for one mu");
    info_cmd->add_option("--mu", info_mu, "back-reflected mean photon number")->required();
    info_cmd->add_flag("--randomized", info_randomized, "select the phase-randomized bound");

    StatsArgs stats;
    CLI::App* stats_cmd = app.add_subcommand("stats", "Photon-number distribution transforms");
    stats_cmd->add_option("--poisson-mu", stats.poisson_mu, "coherent source mean photon number");
    stats_cmd->add_option("--fock-n", stats.fock_n, "Fock source photon number");
    stats_cmd->add_option("--in", stats.in_file, "distribution JSON input file")
        ->check(CLI::ExistingFile);
    stats_cmd->add_option("--attenuate", stats.attenuate_t, "transmission factor in (0,1]");
    stats_cmd->add_option("--shots", stats.shots, "Monte Carlo shots (instead of exact thinning)");
    stats_cmd->add_option("--n-max", stats.n_max, "explicit Poisson truncation");
    stats_cmd->add_option("--cap", stats.cap, "auto-truncation cap");
    std::string stats_out;
    stats_cmd->add_option("--out", stats_out, "output path (.csv for CSV, JSON otherwise)");

    std::string audit_scenario;
    std::string audit_out;
    CLI::App* audit_cmd = app.add_subcommand("audit", "Run a full attack-scenario audit");
    audit_cmd->add_option("--scenario", audit_scenario, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    audit_cmd->add_option("--out", audit_out, "report JSON output path");

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Information bounds over a mu grid");
    sweep_cmd->add_option("--mu-min", sweep.mu_min, "grid start");
    sweep_cmd->add_option("--mu-max", sweep.mu_max, "grid end");
    sweep_cmd->add_option("--points", sweep.points, "grid size");
    sweep_cmd->add_flag("--log", sweep.log_spacing, "logarithmic grid spacing");
    sweep_cmd->add_option("--scenario", sweep.scenario_file,
                          "sweep probe levels through this scenario instead of plain mu")
        ->check(CLI::ExistingFile);
    std::string sweep_out;
    sweep_cmd->add_option("--out", sweep_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*otdr_cmd) return run_otdr(otdr);
        if (*ofdr_cmd) return run_ofdr(ofdr);
        if (*info_cmd) return run_info_gain(info_mu, info_randomized);
        if (*stats_cmd) {
            if (!stats_out.empty()) stats.out = stats_out;
            return run_stats(stats);
        }
        if (*audit_cmd) {
            return run_audit(audit_scenario,
                             audit_out.empty() ? std::nullopt : std::optional<std::string>(audit_out));
        }
        if (*sweep_cmd) {
            if (!sweep_out.empty()) sweep.out = sweep_out;
            return run_sweep(sweep);
        }
    } catch (const qta::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case qta::errc::path_explosion: return kExitPathExplosion;
            case qta::errc::invalid_parameter:
            case qta::errc::parse_error:
            case qta::errc::io_error:
            case qta::errc::nyquist_violation:
            case qta::errc::tail_too_heavy: return kExitBadInput;
            default: return kExitSimulationError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSimulationError;
    }
    return kExitBadInput;
}
