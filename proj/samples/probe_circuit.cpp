// Builds a small apparatus in code, probes it with a simulated pulsed
// reflectometer, and lists the peaks an eavesdropper would see.

#include <iostream>

#include "qta/reflectometry.hpp"
#include "qta/serialization.hpp"

using namespace qta;

int main() {
    OpticalCircuit circuit({
        {.kind = ComponentKind::connector, .position_m = 2.0, .reflectance_db = -40.0,
         .insertion_loss_db = -0.2},
        {.kind = ComponentKind::phase_modulator, .position_m = 8.0, .reflectance_db = -20.0,
         .insertion_loss_db = -1.0},
        {.kind = ComponentKind::faraday_mirror, .position_m = 14.0, .reflectance_db = -0.5},
    });

    const auto events = enumerate_reflection_paths(circuit, 3, -120.0);
    const double pulse_m = 1.0;
    const Trace trace = synthesize_otdr(events, pulse_m, make_otdr_grid(events, pulse_m));
    std::cout << peaks_to_text(detect_peaks(trace, 3.0));
    return 0;
}
