#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qta/audit.hpp"
#include "qta/detail/splitmix64.hpp"
#include "qta/photon_stats.hpp"

using namespace qta;

namespace {

OpticalCircuit fig8_style_circuit() {
    OpticalComponent attenuator;
    attenuator.kind = ComponentKind::attenuator;
    attenuator.position_m = 1.0;
    OpticalComponent mirror;
    mirror.kind = ComponentKind::faraday_mirror;
    mirror.position_m = 10.0;
    mirror.reflectance_db = -10.0;
    return OpticalCircuit({attenuator, mirror});
}

AttackScenario fig8_scenario(bool randomized) {
    CountermeasureConfig cm;
    cm.monitor_threshold_mean = 1e6;
    cm.monitor_sigma = 0.0;
    cm.monitor_k = 3.0;
    cm.filter_band = {1550.0, 10.0, -60.0};
    cm.attenuator_db = -30.0;
    cm.phase_randomization = randomized;
    return AttackScenario{fig8_style_circuit(), cm, true, true};
}

}  // namespace

TEST_CASE("maximum undetected probe") {
    CountermeasureConfig cm;
    cm.monitor_threshold_mean = 1e6;
    cm.monitor_sigma = 0.0;
    cm.monitor_k = 3.0;
    REQUIRE(max_undetected_probe(cm) == 1e6);
    cm.monitor_sigma = 1e4;
    REQUIRE(max_undetected_probe(cm) == 1.03e6);
    cm.monitor_threshold_mean = 0.0;
    cm.monitor_sigma = 0.0;
    REQUIRE(max_undetected_probe(cm) == 0.0);
    cm.monitor_k = -1.0;
    REQUIRE_THROWS_AS(max_undetected_probe(cm), Error);
}

TEST_CASE("back-reflected mean photon number") {
    const AttackScenario scenario = fig8_scenario(false);
    SECTION("a -70 dB return path turns 1e6 photons into 0.1") {
        // -10 dB mirror behind a 30 dB attenuator crossed twice
        REQUIRE(std::abs(back_reflected_mu(scenario, 1e6) - 0.1) < 1e-12);
    }
    SECTION("nothing in, nothing back") {
        REQUIRE(back_reflected_mu(scenario, 0.0) == 0.0);
    }
    SECTION("exactly linear in the probe level") {
        detail::SplitMix64 rng(41);
        for (int rep = 0; rep < 20; ++rep) {
            const double mu = 1e3 * rng.next_unit();
            const double one = back_reflected_mu(scenario, mu);
            const double two = back_reflected_mu(scenario, 2.0 * mu);
            REQUIRE(std::abs(two - 2.0 * one) <= 1e-12 * std::max(1.0, two));
        }
    }
    SECTION("out-of-band probes pay the filter rejection") {
        AttackScenario filtered = scenario;
        filtered.probe_wavelength_in_band = false;
        REQUIRE(std::abs(back_reflected_mu(filtered, 1e6) - 0.1 * 1e-6) < 1e-18);
    }
    SECTION("a perfect filter admits nothing out of band") {
        AttackScenario filtered = scenario;
        filtered.probe_wavelength_in_band = false;
        filtered.countermeasures.filter_band.rejection_db = kNegInfDb;
        REQUIRE(back_reflected_mu(filtered, 1e6) == 0.0);
    }
    SECTION("scenario attenuator setting overrides the circuit component") {
        AttackScenario strong = scenario;
        strong.countermeasures.attenuator_db = -40.0;
        REQUIRE(std::abs(back_reflected_mu(strong, 1e6) - 1e-3) < 1e-15);
    }
}

TEST_CASE("go-and-return transmission") {
    SECTION("terminates at the Faraday mirror, reflectance included") {
        const auto t = go_return_transmission(fig8_style_circuit(), -30.0);
        REQUIRE(t.has_value());
        REQUIRE(std::abs(t->value() - 1e-7) < 1e-19);
    }
    SECTION("no mirror: reflects off the last component") {
        OpticalComponent c;
        c.kind = ComponentKind::connector;
        c.position_m = 1.0;
        c.reflectance_db = -3.0;
        c.insertion_loss_db = -1.0;
        const auto t = go_return_transmission(OpticalCircuit({c}));
        REQUIRE(t.has_value());
        REQUIRE(std::abs(t->value() - db_to_linear(-3.0)) < 1e-15);
    }
}

TEST_CASE("two-way reduction bound") {
    SECTION("coherent input gives mu^2/2 at the attenuated mean") {
        const double mu_in = 1e6;
        const TransmissionFactor t(1e-7);
        const double mu = mu_in * t.value();
        REQUIRE(std::abs(two_way_reduction_check(mu_in, t) - mu * mu / 2.0) < 1e-15);
    }
    SECTION("Fock inputs sit strictly below the coherent bound at integer means") {
        for (int n : {1, 2, 5, 20}) {
            const auto detail = two_way_reduction_detail(static_cast<double>(n),
                                                         TransmissionFactor(0.01));
            REQUIRE(detail.fock_n == n);
            REQUIRE(detail.fock_bound < detail.coherent_bound);
            REQUIRE(detail.bound == detail.coherent_bound);
        }
    }
    SECTION("cross-check against the photon-statistics leading term") {
        const double mu_in = 3.0;
        const TransmissionFactor t(0.05);
        const auto detail = two_way_reduction_detail(mu_in, t);
        const auto coherent = poisson_distribution(MeanPhotonNumber(mu_in), 60);
        REQUIRE(std::abs(detail.coherent_bound - multi_photon_prob_leading(coherent, t)) < 1e-9);
        const auto fock = PhotonNumberDistribution::fock(detail.fock_n);
        REQUIRE(std::abs(detail.fock_bound - multi_photon_prob_leading(fock, t)) < 1e-15);
    }
    SECTION("zero probe, zero bound; margin adds coeff t^3") {
        REQUIRE(two_way_reduction_check(0.0, TransmissionFactor(0.5)) == 0.0);
        const double with_margin = two_way_reduction_check(1.0, TransmissionFactor(0.1), 2.0);
        const double without = two_way_reduction_check(1.0, TransmissionFactor(0.1));
        REQUIRE(std::abs((with_margin - without) - 2.0 * 1e-3) < 1e-15);
    }
}

TEST_CASE("end-to-end audit") {
    SECTION("anchor scenario without phase randomization") {
        const AuditReport r = run_audit(fig8_scenario(false));
        REQUIRE(r.mu_in_max == 1e6);
        REQUIRE(std::abs(r.mu_back - 0.1) < 1e-12);
        REQUIRE(std::abs(r.info_bits - 0.135) < 0.001);
        REQUIRE(r.pa_fraction == r.info_bits);
        REQUIRE(std::abs(r.multi_photon_bound - 0.005) < 1e-12);
    }
    SECTION("anchor scenario with phase randomization") {
        const AuditReport r = run_audit(fig8_scenario(true));
        REQUIRE(std::abs(r.info_bits - 0.095) < 0.001);
    }
    SECTION("randomization always lowers the privacy-amplification bill") {
        for (double att : {-10.0, -20.0, -30.0}) {
            AttackScenario plain = fig8_scenario(false);
            plain.countermeasures.attenuator_db = att;
            AttackScenario randomized = fig8_scenario(true);
            randomized.countermeasures.attenuator_db = att;
            const double without = run_audit(plain).pa_fraction;
            const double with = run_audit(randomized).pa_fraction;
            REQUIRE(with < without);
        }
    }
    SECTION("perfect countermeasures mean zero information") {
        AttackScenario scenario = fig8_scenario(false);
        scenario.countermeasures.monitor_threshold_mean = 0.0;
        scenario.countermeasures.monitor_sigma = 0.0;
        const AuditReport r = run_audit(scenario);
        REQUIRE(r.mu_back == 0.0);
        REQUIRE(r.info_bits == 0.0);
        REQUIRE(r.pa_fraction == 0.0);
    }
    SECTION("off-gate probes return light but no setting information") {
        AttackScenario scenario = fig8_scenario(false);
        scenario.probe_within_gate = false;
        const AuditReport r = run_audit(scenario);
        REQUIRE(r.mu_back > 0.0);
        REQUIRE(r.info_bits == 0.0);
    }
    SECTION("strengthening any single countermeasure never helps Eve") {
        const AuditReport base = run_audit(fig8_scenario(false));

        AttackScenario lower_threshold = fig8_scenario(false);
        lower_threshold.countermeasures.monitor_threshold_mean = 1e5;
        REQUIRE(run_audit(lower_threshold).info_bits <= base.info_bits);

        AttackScenario more_attenuation = fig8_scenario(false);
        more_attenuation.countermeasures.attenuator_db = -35.0;
        REQUIRE(run_audit(more_attenuation).info_bits <= base.info_bits);

        AttackScenario out_of_band = fig8_scenario(false);
        out_of_band.probe_wavelength_in_band = false;
        const AuditReport weak_filter = run_audit(out_of_band);
        out_of_band.countermeasures.filter_band.rejection_db = -80.0;
        REQUIRE(run_audit(out_of_band).info_bits <= weak_filter.info_bits);
    }
}

TEST_CASE("privacy amplification sweep") {
    SECTION("zero grid point reports zeros") {
        const std::vector<double> grid{0.0};
        const auto rows = pa_budget_sweep(fig8_scenario(false), grid);
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].mu_back == 0.0);
        REQUIRE(rows[0].trojan_bits == 0.0);
        REQUIRE(rows[0].reduced_bits == 0.0);
    }
    SECTION("unit-return scenario reproduces the anchor row") {
        OpticalComponent mirror;
        mirror.kind = ComponentKind::faraday_mirror;
        mirror.position_m = 1.0;
        mirror.reflectance_db = 0.0;
        CountermeasureConfig cm;
        cm.monitor_threshold_mean = 1.0;
        const AttackScenario unit{OpticalCircuit({mirror}), cm, true, true};
        const std::vector<double> grid{0.1};
        const auto rows = pa_budget_sweep(unit, grid);
        REQUIRE(std::abs(rows[0].mu_back - 0.1) < 1e-12);
        REQUIRE(std::abs(rows[0].trojan_bits - 0.135) < 0.001);
        REQUIRE(std::abs(rows[0].reduced_bits - 0.095) < 0.001);
    }
    SECTION("both bit columns are monotone along the grid") {
        std::vector<double> grid;
        for (int i = 0; i <= 50; ++i) grid.push_back(1e5 * i);
        const auto rows = pa_budget_sweep(fig8_scenario(false), grid);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            REQUIRE(rows[i].trojan_bits >= rows[i - 1].trojan_bits);
            REQUIRE(rows[i].reduced_bits >= rows[i - 1].reduced_bits);
        }
    }
}
