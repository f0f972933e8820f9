#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qta/decibel.hpp"
#include "qta/error.hpp"
#include "qta/eve_info.hpp"
#include "qta/photon_stats.hpp"
#include "qta/reflectometry.hpp"

namespace qta {

struct FilterBand {
    double center_nm = 0.0;
    double width_nm = 0.0;
    double rejection_db = 0.0;  // out-of-band suppression, <= 0, -inf for a perfect filter
};

struct CountermeasureConfig {
    double monitor_threshold_mean = 0.0;  // mean photon number that trips the monitor, per pulse
    double monitor_sigma = 0.0;           // monitor reading fluctuation, photons
    double monitor_k = 3.0;               // sigmas of headroom granted to Eve
    FilterBand filter_band;
    double gate_duty = 1.0;          // fraction of time the modulator is active
    double attenuator_db = 0.0;      // one-way variable-attenuator setting, <= 0
    bool phase_randomization = false;
    double off_gate_penalty_db = 0.0;  // extra return loss for probes outside the gate, <= 0
};

inline void validate(const CountermeasureConfig& cm) {
    require(std::isfinite(cm.monitor_threshold_mean) && cm.monitor_threshold_mean >= 0.0,
            errc::invalid_parameter, "monitor_threshold_mean must be finite and >= 0");
    require(std::isfinite(cm.monitor_sigma) && cm.monitor_sigma >= 0.0, errc::invalid_parameter,
            "monitor_sigma must be finite and >= 0");
    require(std::isfinite(cm.monitor_k) && cm.monitor_k > 0.0, errc::invalid_parameter,
            "monitor_k must be finite and > 0");
    require(cm.filter_band.rejection_db <= 0.0, errc::invalid_parameter,
            "filter rejection_db must be <= 0");
    require(std::isfinite(cm.gate_duty) && cm.gate_duty > 0.0 && cm.gate_duty <= 1.0,
            errc::invalid_parameter, "gate_duty must lie in (0, 1]");
    require(std::isfinite(cm.attenuator_db) && cm.attenuator_db <= 0.0, errc::invalid_parameter,
            "attenuator_db must be finite and <= 0");
    require(cm.off_gate_penalty_db <= 0.0, errc::invalid_parameter,
            "off_gate_penalty_db must be <= 0");
}

struct AttackScenario {
    OpticalCircuit circuit;
    CountermeasureConfig countermeasures;
    bool probe_wavelength_in_band = true;
    bool probe_within_gate = true;
};

struct AuditOptions {
    int max_order = 3;
    double floor_db = -200.0;
    std::size_t candidate_cap = kDefaultPathCap;
    double t3_safety_coeff = 0.0;  // adds coeff * t^3 to the multi-photon bound
};

struct AuditReport {
    double mu_in_max = 0.0;        // largest probe Eve can inject undetected, per pulse
    double mu_back = 0.0;          // mean photon number returned to Eve per qubit
    double info_bits = 0.0;        // Eve's per-qubit information bound
    double pa_fraction = 0.0;      // privacy-amplification sacrifice per sifted bit (= info_bits)
    double multi_photon_bound = 0.0;  // Prob(m >= 2) bound for the outgoing pulse
};

/// Conservative bound on the per-pulse probe energy that stays statistically
/// indistinguishable from legitimate fluctuation: threshold + k * sigma.
inline double max_undetected_probe(const CountermeasureConfig& cm) {
    validate(cm);
    return cm.monitor_threshold_mean + cm.monitor_k * cm.monitor_sigma;
}

namespace detail {

/// The scenario's variable-attenuator setting is authoritative for every
/// attenuator component; a circuit without one gets the setting applied as a
/// lumped loss at the entry instead (crossed once in, once out).
inline OpticalCircuit apply_attenuator_setting(const OpticalCircuit& circuit, double attenuator_db,
                                               bool& has_attenuator) {
    std::vector<OpticalComponent> comps = circuit.components();
    has_attenuator = false;
    for (OpticalComponent& c : comps) {
        if (c.kind == ComponentKind::attenuator) {
            c.insertion_loss_db = attenuator_db;
            has_attenuator = true;
        }
    }
    return OpticalCircuit(std::move(comps), circuit.interferometer());
}

}  // namespace detail

/// Mean photon number returned to Eve for a probe of mean mu_in:
/// mu_in * gate factor * filter factor * total linear return of all
/// enumerated backscatter paths. Linear in mu_in.
inline double back_reflected_mu(const AttackScenario& scenario, double mu_in,
                                const AuditOptions& options = {}) {
    require(std::isfinite(mu_in) && mu_in >= 0.0, errc::invalid_parameter,
            "mu_in must be finite and >= 0");
    validate(scenario.countermeasures);
    if (mu_in == 0.0) return 0.0;

    bool has_attenuator = false;
    const OpticalCircuit circuit = detail::apply_attenuator_setting(
        scenario.circuit, scenario.countermeasures.attenuator_db, has_attenuator);
    const std::vector<ReflectionEvent> paths = enumerate_reflection_paths(
        circuit, options.max_order, options.floor_db, options.candidate_cap);
    // interferometer expansion redistributes power without changing the total,
    // so it cannot affect mu_back
    double total_return = 0.0;
    for (const ReflectionEvent& e : paths) total_return += db_to_linear(e.power_db);
    if (!has_attenuator) {
        total_return *= db_to_linear(2.0 * scenario.countermeasures.attenuator_db);
    }

    const double filter_factor = scenario.probe_wavelength_in_band
                                     ? 1.0
                                     : db_to_linear(scenario.countermeasures.filter_band.rejection_db);
    const double gate_factor = scenario.probe_within_gate
                                   ? 1.0
                                   : db_to_linear(scenario.countermeasures.off_gate_penalty_db);
    return mu_in * gate_factor * filter_factor * total_return;
}

/// Go-and-return transmission of the legitimate path through the apparatus:
/// across every component up to the terminal reflector (the last Faraday
/// mirror if present, otherwise the last component) and back, including the
/// terminal reflectance. -inf (fully blocked) is reported as t = 0 via the
/// optional being empty.
inline std::optional<TransmissionFactor> go_return_transmission(const OpticalCircuit& circuit,
                                                                double attenuator_db = 0.0) {
    bool has_attenuator = false;
    const OpticalCircuit configured =
        detail::apply_attenuator_setting(circuit, attenuator_db, has_attenuator);
    const auto& comps = configured.components();
    std::size_t terminal = comps.size() - 1;
    for (std::size_t i = comps.size(); i-- > 0;) {
        if (comps[i].kind == ComponentKind::faraday_mirror) {
            terminal = i;
            break;
        }
    }
    double db = 0.0;
    for (std::size_t i = 0; i < terminal; ++i) db += 2.0 * comps[i].insertion_loss_db;
    if (comps[terminal].reflectance_db > kNegInfDb) db += comps[terminal].reflectance_db;
    if (!has_attenuator) db += 2.0 * attenuator_db;
    const double t = db_to_linear(db);
    if (t <= 0.0) return std::nullopt;
    return TransmissionFactor(std::min(t, 1.0));
}

struct TwoWayBound {
    double coherent_bound = 0.0;  // mu_in^2 t^2 / 2
    double fock_bound = 0.0;      // N(N-1) t^2 / 2 for the largest Fock state with mean <= mu_in
    int fock_n = 0;
    double bound = 0.0;  // worst case plus the optional t^3 margin
};

/// Worst-case multi-photon probability of the outgoing pulse after phase
/// randomization and attenuation, over the admissible input families at mean
/// <= mu_in_bound. The coherent input dominates the Fock input, so the bound
/// is mu_in^2 t^2 / 2, plus an optional t^3 safety margin.
inline TwoWayBound two_way_reduction_detail(double mu_in_bound, TransmissionFactor t,
                                            double t3_safety_coeff = 0.0) {
    require(std::isfinite(mu_in_bound) && mu_in_bound >= 0.0, errc::invalid_parameter,
            "mu_in_bound must be finite and >= 0");
    require(t3_safety_coeff >= 0.0, errc::invalid_parameter, "safety margin must be >= 0");
    const double tv = t.value();
    TwoWayBound b;
    b.coherent_bound = mu_in_bound * mu_in_bound * tv * tv / 2.0;
    b.fock_n = static_cast<int>(std::floor(mu_in_bound));
    b.fock_bound = static_cast<double>(b.fock_n) * static_cast<double>(b.fock_n - 1) * tv * tv / 2.0;
    if (b.fock_n < 1) b.fock_bound = 0.0;
    b.bound = std::max(b.coherent_bound, b.fock_bound) + t3_safety_coeff * tv * tv * tv;
    return b;
}

inline double two_way_reduction_check(double mu_in_bound, TransmissionFactor t,
                                      double t3_safety_coeff = 0.0) {
    return two_way_reduction_detail(mu_in_bound, t, t3_safety_coeff).bound;
}

/// End-to-end audit of one attack scenario. Probes outside the modulator
/// gate see no setting information (info_bits = 0) although the returned
/// light itself is still reported.
inline AuditReport run_audit(const AttackScenario& scenario, const AuditOptions& options = {}) {
    AuditReport report;
    report.mu_in_max = max_undetected_probe(scenario.countermeasures);
    report.mu_back = back_reflected_mu(scenario, report.mu_in_max, options);

    if (!scenario.probe_within_gate) {
        report.info_bits = 0.0;
    } else {
        const MeanPhotonNumber mu(report.mu_back);
        report.info_bits = scenario.countermeasures.phase_randomization ? reduced_info(mu).bits()
                                                                        : trojan_info(mu).bits();
    }
    report.pa_fraction = report.info_bits;

    const std::optional<TransmissionFactor> t =
        go_return_transmission(scenario.circuit, scenario.countermeasures.attenuator_db);
    report.multi_photon_bound =
        t ? two_way_reduction_check(report.mu_in_max, *t, options.t3_safety_coeff) : 0.0;
    return report;
}

struct PaSweepRow {
    double mu_in = 0.0;
    double mu_back = 0.0;
    double trojan_bits = 0.0;
    double reduced_bits = 0.0;
};

/// Evaluates both information bounds along a grid of probe intensities.
inline std::vector<PaSweepRow> pa_budget_sweep(const AttackScenario& scenario,
                                               std::span<const double> mu_grid,
                                               const AuditOptions& options = {}) {
    std::vector<PaSweepRow> rows;
    rows.reserve(mu_grid.size());
    for (double mu_in : mu_grid) {
        require(std::isfinite(mu_in) && mu_in >= 0.0, errc::invalid_parameter,
                "sweep grid values must be finite and >= 0");
        PaSweepRow row;
        row.mu_in = mu_in;
        row.mu_back = back_reflected_mu(scenario, mu_in, options);
        const MeanPhotonNumber mu(row.mu_back);
        row.trojan_bits = trojan_info(mu).bits();
        row.reduced_bits = reduced_info(mu).bits();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qta
