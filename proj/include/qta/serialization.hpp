#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qta/audit.hpp"
#include "qta/error.hpp"
#include "qta/eve_info.hpp"
#include "qta/photon_stats.hpp"
#include "qta/reflectometry.hpp"

namespace qta {

using json = nlohmann::json;

/// 9 significant digits, '.' decimal separator, no grouping.
inline std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// files

inline json parse_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(errc::parse_error, path.string() + ": " + e.what());
    }
}

/// Writes via a temporary file in the same directory and renames on success,
/// so a failed run never leaves a partial output behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), errc::io_error, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        require(out.good(), errc::io_error, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail(errc::io_error, "cannot rename " + tmp.string() + " to " + path.string());
    }
}

// ---------------------------------------------------------------------------
// low-level json field access

namespace jsonio {

inline const json& member(const json& obj, const std::string& key, const std::string& where) {
    require(obj.is_object(), errc::parse_error, where + ": expected an object");
    auto it = obj.find(key);
    require(it != obj.end(), errc::parse_error, where + "." + key + ": missing required field");
    return *it;
}

inline double number(const json& v, const std::string& where) {
    require(v.is_number(), errc::parse_error, where + ": expected a number");
    return v.get<double>();
}

inline double number_or(const json& obj, const std::string& key, double fallback,
                        const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return number(obj.at(key), where + "." + key);
}

/// dB fields accept a number or the string "-inf".
inline double db_value(const json& v, const std::string& where) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        require(s == "-inf" || s == "-Inf" || s == "-INF", errc::parse_error,
                where + ": only \"-inf\" is accepted as a string dB value, got \"" + s + "\"");
        return kNegInfDb;
    }
    return number(v, where);
}

inline double db_or(const json& obj, const std::string& key, double fallback,
                    const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return db_value(obj.at(key), where + "." + key);
}

inline bool flag_or(const json& obj, const std::string& key, bool fallback,
                    const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    require(v.is_boolean(), errc::parse_error, where + "." + key + ": expected true or false");
    return v.get<bool>();
}

}  // namespace jsonio

// ---------------------------------------------------------------------------
// photon number distributions

inline json distribution_to_json(const PhotonNumberDistribution& d) {
    return json{{"n_max", d.n_max()}, {"probs", d.probs()}};
}

inline PhotonNumberDistribution distribution_from_json(const json& j) {
    const json& probs = jsonio::member(j, "probs", "distribution");
    require(probs.is_array() && !probs.empty(), errc::parse_error,
            "distribution.probs: expected a non-empty array");
    std::vector<double> p;
    p.reserve(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        p.push_back(jsonio::number(probs[i], "distribution.probs[" + std::to_string(i) + "]"));
    if (j.contains("n_max")) {
        const auto n_max = static_cast<long long>(jsonio::number(j.at("n_max"), "distribution.n_max"));
        require(n_max == static_cast<long long>(p.size()) - 1, errc::parse_error,
                "distribution.n_max does not match the probs length");
    }
    try {
        return PhotonNumberDistribution(std::move(p));
    } catch (const Error& e) {
        fail(errc::parse_error, std::string("distribution: ") + e.what());
    }
}

inline std::string distribution_to_csv(const PhotonNumberDistribution& d) {
    std::string out = "n,prob\n";
    for (int n = 0; n <= d.n_max(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_g9(d.prob(n));
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// circuits

inline ComponentKind component_kind_from_string(const std::string& s, const std::string& where) {
    for (ComponentKind k :
         {ComponentKind::fiber_span, ComponentKind::connector, ComponentKind::beam_splitter,
          ComponentKind::attenuator, ComponentKind::phase_modulator, ComponentKind::faraday_mirror,
          ComponentKind::detector_tap, ComponentKind::filter}) {
        if (s == to_string(k)) return k;
    }
    fail(errc::parse_error, where + ": unknown component kind \"" + s + "\"");
}

inline OpticalCircuit circuit_from_json(const json& j) {
    const json& comps = jsonio::member(j, "components", "circuit");
    require(comps.is_array() && !comps.empty(), errc::parse_error,
            "circuit.components: expected a non-empty array");
    std::vector<OpticalComponent> components;
    components.reserve(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string where = "circuit.components[" + std::to_string(i) + "]";
        const json& cj = comps[i];
        require(cj.is_object(), errc::parse_error, where + ": expected an object");
        OpticalComponent c;
        const json& kind = jsonio::member(cj, "kind", where);
        require(kind.is_string(), errc::parse_error, where + ".kind: expected a string");
        c.kind = component_kind_from_string(kind.get<std::string>(), where + ".kind");
        c.position_m = jsonio::number(jsonio::member(cj, "position_m", where), where + ".position_m");
        c.reflectance_db = jsonio::db_or(cj, "reflectance_db", kNegInfDb, where);
        c.insertion_loss_db = jsonio::number_or(cj, "insertion_loss_db", 0.0, where);
        if (c.kind == ComponentKind::fiber_span) {
            c.length_m = jsonio::number(jsonio::member(cj, "length_m", where), where + ".length_m");
            c.rayleigh_db_per_m = jsonio::db_or(cj, "rayleigh_db_per_m", -70.0, where);
        }
        if (c.kind == ComponentKind::beam_splitter)
            c.split_ratio = jsonio::number_or(cj, "split_ratio", 0.5, where);
        if (c.kind == ComponentKind::phase_modulator)
            c.contrast_db = jsonio::number_or(cj, "contrast_db", 0.0, where);
        components.push_back(c);
    }
    std::optional<InterferometerSpec> interferometer;
    if (j.contains("interferometer") && !j.at("interferometer").is_null()) {
        const json& ij = j.at("interferometer");
        InterferometerSpec spec;
        spec.arm_difference_m = jsonio::number(
            jsonio::member(ij, "arm_difference_m", "circuit.interferometer"),
            "circuit.interferometer.arm_difference_m");
        spec.split_ratio =
            jsonio::number_or(ij, "split_ratio", 0.5, "circuit.interferometer");
        interferometer = spec;
    }
    try {
        return OpticalCircuit(std::move(components), interferometer);
    } catch (const Error& e) {
        fail(errc::parse_error, std::string("circuit: ") + e.what());
    }
}

inline OpticalCircuit load_circuit(const std::filesystem::path& path) {
    return circuit_from_json(parse_json_file(path));
}

// ---------------------------------------------------------------------------
// scenarios

struct LoadedScenario {
    AttackScenario scenario;
    AuditOptions options;
};

inline CountermeasureConfig countermeasures_from_json(const json& j) {
    CountermeasureConfig cm;
    const std::string where = "scenario.countermeasures";
    cm.monitor_threshold_mean =
        jsonio::number(jsonio::member(j, "monitor_threshold_mean", where),
                       where + ".monitor_threshold_mean");
    cm.monitor_sigma = jsonio::number_or(j, "monitor_sigma", 0.0, where);
    cm.monitor_k = jsonio::number_or(j, "monitor_k", 3.0, where);
    if (j.contains("filter_band")) {
        const json& fb = j.at("filter_band");
        cm.filter_band.center_nm = jsonio::number_or(fb, "center_nm", 0.0, where + ".filter_band");
        cm.filter_band.width_nm = jsonio::number_or(fb, "width_nm", 0.0, where + ".filter_band");
        cm.filter_band.rejection_db = jsonio::db_or(fb, "rejection_db", 0.0, where + ".filter_band");
    }
    cm.gate_duty = jsonio::number_or(j, "gate_duty", 1.0, where);
    cm.attenuator_db = jsonio::number_or(j, "attenuator_db", 0.0, where);
    cm.phase_randomization = jsonio::flag_or(j, "phase_randomization", false, where);
    cm.off_gate_penalty_db = jsonio::db_or(j, "off_gate_penalty_db", 0.0, where);
    try {
        validate(cm);
    } catch (const Error& e) {
        fail(errc::parse_error, where + ": " + e.what());
    }
    return cm;
}

/// Scenario files either inline the circuit under "circuit" or reference a
/// circuit file (resolved against the scenario's own directory) under
/// "circuit_file".
inline LoadedScenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
    std::optional<OpticalCircuit> circuit;
    if (j.contains("circuit")) {
        circuit = circuit_from_json(j.at("circuit"));
    } else if (j.contains("circuit_file")) {
        const json& ref = j.at("circuit_file");
        require(ref.is_string(), errc::parse_error, "scenario.circuit_file: expected a string");
        circuit = load_circuit(base_dir / ref.get<std::string>());
    } else {
        fail(errc::parse_error, "scenario: needs either \"circuit\" or \"circuit_file\"");
    }

    AttackScenario scenario{*std::move(circuit),
                            countermeasures_from_json(jsonio::member(j, "countermeasures", "scenario")),
                            jsonio::flag_or(j, "probe_wavelength_in_band", true, "scenario"),
                            jsonio::flag_or(j, "probe_within_gate", true, "scenario")};

    AuditOptions options;
    if (j.contains("audit")) {
        const json& aj = j.at("audit");
        options.max_order = static_cast<int>(jsonio::number_or(aj, "max_order", 3.0, "scenario.audit"));
        options.floor_db = jsonio::db_or(aj, "floor_db", options.floor_db, "scenario.audit");
        options.candidate_cap = static_cast<std::size_t>(
            jsonio::number_or(aj, "candidate_cap", static_cast<double>(options.candidate_cap),
                              "scenario.audit"));
        options.t3_safety_coeff =
            jsonio::number_or(aj, "t3_safety_coeff", 0.0, "scenario.audit");
    }
    return LoadedScenario{std::move(scenario), options};
}

inline LoadedScenario load_scenario(const std::filesystem::path& path) {
    return scenario_from_json(parse_json_file(path), path.parent_path());
}

// ---------------------------------------------------------------------------
// reports and tables

inline json report_to_json(const AuditReport& r) {
    return json{{"mu_in_max", r.mu_in_max},
                {"mu_back", r.mu_back},
                {"info_bits", r.info_bits},
                {"pa_fraction", r.pa_fraction},
                {"multi_photon_bound", r.multi_photon_bound}};
}

inline std::string report_to_text(const AuditReport& r) {
    std::string out;
    auto line = [&out](const char* label, double v) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "  %-34s %s\n", label, format_g9(v).c_str());
        out += buf;
    };
    out += "audit report\n";
    line("max undetected probe (photons)", r.mu_in_max);
    line("back-reflected mean photons", r.mu_back);
    line("Eve's information (bits/qubit)", r.info_bits);
    line("privacy amplification fraction", r.pa_fraction);
    line("multi-photon bound P(m>=2)", r.multi_photon_bound);
    return out;
}

inline std::string trace_to_csv(const Trace& t) {
    std::string out = "distance_m,power_db\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += format_g9(t.distance_m(i));
        out += ',';
        out += format_g9(t.power_db()[i]);
        out += '\n';
    }
    return out;
}

inline std::string peaks_to_text(std::span<const DetectedPeak> peaks) {
    std::string out = "distance_m     power_db\n";
    for (const DetectedPeak& p : peaks) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-14s %s\n", format_g9(p.distance_m).c_str(),
                      format_g9(p.power_db).c_str());
        out += buf;
    }
    return out;
}

inline std::string info_sweep_to_csv(std::span<const InfoSweepRow> rows) {
    std::string out = "mu,trojan_bits,reduced_bits,ratio\n";
    for (const InfoSweepRow& r : rows) {
        out += format_g9(r.mu);
        out += ',';
        out += format_g9(r.trojan_bits);
        out += ',';
        out += format_g9(r.reduced_bits);
        out += ',';
        out += format_g9(r.ratio);
        out += '\n';
    }
    return out;
}

inline std::string pa_sweep_to_csv(std::span<const PaSweepRow> rows) {
    std::string out = "mu_in,mu_back,trojan_bits,reduced_bits\n";
    for (const PaSweepRow& r : rows) {
        out += format_g9(r.mu_in);
        out += ',';
        out += format_g9(r.mu_back);
        out += ',';
        out += format_g9(r.trojan_bits);
        out += ',';
        out += format_g9(r.reduced_bits);
        out += '\n';
    }
    return out;
}

}  // namespace qta
