#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qta/serialization.hpp"

using namespace qta;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qta_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("number formatting is pinned to 9 significant digits") {
    REQUIRE(format_g9(0.1234567891) == "0.123456789");
    REQUIRE(format_g9(2.0) == "2");
    REQUIRE(format_g9(-36.9897) == "-36.9897");
    REQUIRE(format_g9(1e-07) == "1e-07");
}

TEST_CASE("distribution serialization") {
    const auto d = poisson_distribution(MeanPhotonNumber(0.5), 12);
    SECTION("JSON round trip") {
        const json j = distribution_to_json(d);
        REQUIRE(j.at("n_max") == 12);
        const auto back = distribution_from_json(j);
        REQUIRE(back.probs() == d.probs());
    }
    SECTION("n_max inconsistent with probs is rejected") {
        json j = distribution_to_json(d);
        j["n_max"] = 5;
        REQUIRE_THROWS_MATCHES(distribution_from_json(j), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::parse_error;
                               }));
    }
    SECTION("unnormalized payloads surface as parse errors") {
        const json j{{"probs", {0.5, 0.1}}};
        REQUIRE_THROWS_MATCHES(distribution_from_json(j), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::parse_error;
                               }));
    }
    SECTION("CSV has the n,prob layout") {
        const auto csv = distribution_to_csv(PhotonNumberDistribution::fock(1));
        REQUIRE(csv == "n,prob\n0,0\n1,1\n");
    }
}

TEST_CASE("circuit parsing") {
    const json good = json::parse(R"({
      "components": [
        {"kind": "connector", "position_m": 1.0, "reflectance_db": -40.0, "insertion_loss_db": -0.2},
        {"kind": "fiber_span", "position_m": 2.0, "length_m": 50.0},
        {"kind": "beam_splitter", "position_m": 60.0, "reflectance_db": -45.0, "split_ratio": 0.3},
        {"kind": "attenuator", "position_m": 70.0}
      ],
      "interferometer": {"arm_difference_m": 11.5, "split_ratio": 0.5}
    })");
    SECTION("fields and defaults land where expected") {
        const OpticalCircuit c = circuit_from_json(good);
        REQUIRE(c.components().size() == 4);
        REQUIRE(c.components()[0].kind == ComponentKind::connector);
        REQUIRE(c.components()[1].rayleigh_db_per_m == -70.0);  // default
        REQUIRE(c.components()[2].split_ratio == 0.3);
        REQUIRE(c.components()[3].reflectance_db == kNegInfDb);  // absent -> no reflection
        REQUIRE(c.interferometer().has_value());
        REQUIRE(c.interferometer()->arm_difference_m == 11.5);
    }
    SECTION("unknown component kinds are named in the diagnostic") {
        json bad = good;
        bad["components"][1]["kind"] = "wormhole";
        try {
            circuit_from_json(bad);
            FAIL("expected a parse error");
        } catch (const Error& e) {
            REQUIRE(e.code() == errc::parse_error);
            REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("components[1].kind"));
            REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("wormhole"));
        }
    }
    SECTION("missing required fields are named") {
        json bad = good;
        bad["components"][0].erase("position_m");
        try {
            circuit_from_json(bad);
            FAIL("expected a parse error");
        } catch (const Error& e) {
            REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("position_m"));
        }
    }
    SECTION("empty component lists are rejected") {
        REQUIRE_THROWS_AS(circuit_from_json(json{{"components", json::array()}}), Error);
    }
    SECTION("the string -inf is a valid dB value") {
        json with_inf = good;
        with_inf["components"][0]["reflectance_db"] = "-inf";
        const OpticalCircuit c = circuit_from_json(with_inf);
        REQUIRE(c.components()[0].reflectance_db == kNegInfDb);
    }
}

TEST_CASE("scenario parsing") {
    TempDir tmp;
    const std::string circuit_json = R"({
      "components": [
        {"kind": "attenuator", "position_m": 1.0},
        {"kind": "faraday_mirror", "position_m": 10.0, "reflectance_db": -10.0}
      ]
    })";
    {
        std::ofstream out(tmp.path / "circuit.json");
        out << circuit_json;
    }
    SECTION("circuit_file references resolve against the scenario directory") {
        {
            std::ofstream out(tmp.path / "scenario.json");
            out << R"({
              "circuit_file": "circuit.json",
              "countermeasures": {"monitor_threshold_mean": 1e6, "attenuator_db": -30.0}
            })";
        }
        const LoadedScenario loaded = load_scenario(tmp.path / "scenario.json");
        REQUIRE(loaded.scenario.circuit.components().size() == 2);
        REQUIRE(loaded.scenario.countermeasures.monitor_k == 3.0);  // default
        REQUIRE(loaded.scenario.probe_within_gate);                 // default
        REQUIRE(loaded.options.max_order == 3);                     // default
    }
    SECTION("inline circuits work too") {
        const json j{{"circuit", json::parse(circuit_json)},
                     {"countermeasures", {{"monitor_threshold_mean", 10.0}}},
                     {"audit", {{"max_order", 5}, {"floor_db", -150.0}}}};
        const LoadedScenario loaded = scenario_from_json(j, ".");
        REQUIRE(loaded.options.max_order == 5);
        REQUIRE(loaded.options.floor_db == -150.0);
    }
    SECTION("a perfect filter can be spelled -inf") {
        const json j{{"circuit", json::parse(circuit_json)},
                     {"countermeasures",
                      {{"monitor_threshold_mean", 10.0},
                       {"filter_band", {{"rejection_db", "-inf"}}}}}};
        const LoadedScenario loaded = scenario_from_json(j, ".");
        REQUIRE(loaded.scenario.countermeasures.filter_band.rejection_db == kNegInfDb);
    }
    SECTION("missing countermeasures block is an error") {
        const json j{{"circuit", json::parse(circuit_json)}};
        REQUIRE_THROWS_MATCHES(scenario_from_json(j, "."), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::parse_error;
                               }));
    }
    SECTION("invalid countermeasure values surface as parse errors") {
        const json j{{"circuit", json::parse(circuit_json)},
                     {"countermeasures",
                      {{"monitor_threshold_mean", 10.0}, {"gate_duty", 1.5}}}};
        REQUIRE_THROWS_MATCHES(scenario_from_json(j, "."), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::parse_error;
                               }));
    }
}

TEST_CASE("report serialization") {
    AuditReport r;
    r.mu_in_max = 1e6;
    r.mu_back = 0.1;
    r.info_bits = 0.135;
    r.pa_fraction = 0.135;
    r.multi_photon_bound = 0.005;
    const json j = report_to_json(r);
    REQUIRE(j.at("mu_in_max") == 1e6);
    REQUIRE(j.at("pa_fraction") == 0.135);
    const std::string text = report_to_text(r);
    REQUIRE_THAT(text, Catch::Matchers::ContainsSubstring("privacy amplification"));
    REQUIRE_THAT(text, Catch::Matchers::ContainsSubstring("0.135"));
}

TEST_CASE("atomic file writes") {
    TempDir tmp;
    const fs::path target = tmp.path / "out.csv";
    write_file_atomic(target, "a,b\n1,2\n");
    REQUIRE(slurp(target) == "a,b\n1,2\n");
    write_file_atomic(target, "new");
    REQUIRE(slurp(target) == "new");
    REQUIRE(!fs::exists(target.string() + ".tmp"));
    REQUIRE_THROWS_MATCHES(write_file_atomic(tmp.path / "no_such_dir" / "x", "y"), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == errc::io_error;
                           }));
}

TEST_CASE("trace CSV layout") {
    const Trace t(0.0, 0.5, {-70.0, -40.0, -70.0}, -120.0);
    REQUIRE(trace_to_csv(t) == "distance_m,power_db\n0,-70\n0.5,-40\n1,-70\n");
}
