#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qta/decibel.hpp"
#include "qta/detail/fft.hpp"
#include "qta/detail/splitmix64.hpp"
#include "qta/error.hpp"
#include "qta/eve_info.hpp"
#include "qta/photon_stats.hpp"

namespace qta {

enum class ComponentKind {
    fiber_span,
    connector,
    beam_splitter,
    attenuator,
    phase_modulator,
    faraday_mirror,
    detector_tap,
    filter,
};

inline const char* to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::fiber_span: return "fiber_span";
        case ComponentKind::connector: return "connector";
        case ComponentKind::beam_splitter: return "beam_splitter";
        case ComponentKind::attenuator: return "attenuator";
        case ComponentKind::phase_modulator: return "phase_modulator";
        case ComponentKind::faraday_mirror: return "faraday_mirror";
        case ComponentKind::detector_tap: return "detector_tap";
        case ComponentKind::filter: return "filter";
    }
    return "unknown";
}

/// One optical element, modeled as a point at `position_m`. Discrete
/// backscatter has power ratio `reflectance_db` (-inf for none); every
/// traversal of the point costs `insertion_loss_db`. Fiber spans extend from
/// position_m over length_m and contribute distributed Rayleigh backscatter
/// instead of a discrete event.
struct OpticalComponent {
    ComponentKind kind = ComponentKind::connector;
    double position_m = 0.0;
    double reflectance_db = kNegInfDb;
    double insertion_loss_db = 0.0;
    // kind-specific parameters
    double length_m = 0.0;             // fiber_span
    double rayleigh_db_per_m = -70.0;  // fiber_span
    double split_ratio = 0.5;          // beam_splitter
    double contrast_db = 0.0;          // phase_modulator: reflectance delta between settings
};

struct InterferometerSpec {
    double arm_difference_m = 0.0;  // long arm minus short arm
    double split_ratio = 0.5;
};

inline void validate(const InterferometerSpec& spec) {
    require(std::isfinite(spec.arm_difference_m) && spec.arm_difference_m > 0.0,
            errc::invalid_parameter, "interferometer arm difference must be > 0");
    require(std::isfinite(spec.split_ratio) && spec.split_ratio > 0.0 && spec.split_ratio <= 1.0,
            errc::invalid_parameter, "interferometer split ratio must lie in (0, 1]");
}

inline void validate(const OpticalComponent& c) {
    require(std::isfinite(c.position_m) && c.position_m >= 0.0, errc::invalid_parameter,
            "component position must be finite and >= 0");
    require(c.reflectance_db <= 0.0, errc::invalid_parameter,
            "reflectance_db must be <= 0 (use -inf for no discrete reflection)");
    require(std::isfinite(c.insertion_loss_db) && c.insertion_loss_db <= 0.0,
            errc::invalid_parameter, "insertion_loss_db must be finite and <= 0");
    if (c.kind == ComponentKind::fiber_span) {
        require(std::isfinite(c.length_m) && c.length_m > 0.0, errc::invalid_parameter,
                "fiber_span length_m must be > 0");
        require(c.rayleigh_db_per_m <= 0.0, errc::invalid_parameter,
                "rayleigh_db_per_m must be <= 0");
    }
    if (c.kind == ComponentKind::beam_splitter) {
        require(std::isfinite(c.split_ratio) && c.split_ratio > 0.0 && c.split_ratio < 1.0,
                errc::invalid_parameter, "beam splitter split_ratio must lie in (0, 1)");
    }
}

/// Ordered component list probed from position 0. Positions are strictly
/// increasing along the circuit.
class OpticalCircuit {
public:
    explicit OpticalCircuit(std::vector<OpticalComponent> components,
                            std::optional<InterferometerSpec> interferometer = std::nullopt)
        : components_(std::move(components)), interferometer_(interferometer) {
        require(!components_.empty(), errc::invalid_parameter, "circuit needs at least one component");
        for (std::size_t i = 0; i < components_.size(); ++i) {
            validate(components_[i]);
            if (i > 0) {
                require(components_[i].position_m > components_[i - 1].position_m,
                        errc::invalid_parameter, "component positions must be strictly increasing");
            }
        }
        if (interferometer_) validate(*interferometer_);
    }

    const std::vector<OpticalComponent>& components() const noexcept { return components_; }
    const std::optional<InterferometerSpec>& interferometer() const noexcept { return interferometer_; }

private:
    std::vector<OpticalComponent> components_;
    std::optional<InterferometerSpec> interferometer_;
};

/// One backscatter path. Distances are one-way equivalent (round-trip
/// optical path / 2), matching how reflectometer axes are labeled.
struct ReflectionEvent {
    double distance_m = 0.0;
    double power_db = 0.0;  // returned power relative to launched power
    int order = 1;          // number of reflections along the path
};

inline constexpr std::size_t kDefaultPathCap = 1'000'000;

namespace detail {

/// Number of alternating reflection sequences of odd length <= max_order over
/// `reflector_count` reflectors, capped: returns as soon as the running total
/// exceeds `cap`. Pure combinatorics; loss floors do not enter.
inline double count_path_candidates(std::size_t reflector_count, int max_order, double cap) {
    const std::size_t r = reflector_count;
    if (r == 0) return 0.0;
    // a[i]: sequences of the current length ending at reflector i
    std::vector<double> a(r, 1.0);
    double total = static_cast<double>(r);  // order-1 paths
    for (int order = 2; order <= max_order && total <= cap; ++order) {
        std::vector<double> next(r, 0.0);
        if (order % 2 == 0) {
            // next index must be smaller (bounce back toward the entry)
            double suffix = 0.0;
            for (std::size_t i = r; i-- > 0;) {
                next[i] = suffix;  // sum of a[j] for j > i
                suffix += a[i];
            }
        } else {
            double prefix = 0.0;
            for (std::size_t i = 0; i < r; ++i) {
                next[i] = prefix;  // sum of a[j] for j < i
                prefix += a[i];
            }
        }
        a = std::move(next);
        if (order % 2 == 1) {
            for (double v : a) total += v;
        }
    }
    return total;
}

}  // namespace detail

/// Enumerates every backscatter path with at most `max_order` reflections and
/// returned power >= floor_db. A path alternates direction at each
/// reflection and must end traveling back toward the entry, so only odd
/// orders appear. Path power is the sum of the reflectances met plus the
/// insertion loss of every component crossed, each crossing counted.
/// Throws path_explosion if the combinatorial candidate count (before floor
/// pruning) exceeds `candidate_cap`.
inline std::vector<ReflectionEvent> enumerate_reflection_paths(const OpticalCircuit& circuit,
                                                               int max_order, double floor_db,
                                                               std::size_t candidate_cap = kDefaultPathCap) {
    require(max_order >= 1, errc::invalid_parameter, "max_order must be >= 1");
    require(floor_db < 0.0, errc::invalid_parameter, "floor_db must be < 0 (-inf for no floor)");

    const auto& comps = circuit.components();
    const std::size_t n = comps.size();

    // prefix_loss[i] = total insertion loss of components with index < i
    std::vector<double> prefix_loss(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix_loss[i + 1] = prefix_loss[i] + comps[i].insertion_loss_db;

    struct Reflector {
        std::size_t comp_index;
        double position_m;
        double reflectance_db;
        double entry_loss_db;  // crossing everything in front of it once
    };
    std::vector<Reflector> refl;
    for (std::size_t i = 0; i < n; ++i) {
        if (comps[i].reflectance_db > kNegInfDb) {
            refl.push_back({i, comps[i].position_m, comps[i].reflectance_db, prefix_loss[i]});
        }
    }
    if (refl.empty()) return {};

    const double candidates =
        detail::count_path_candidates(refl.size(), max_order, static_cast<double>(candidate_cap));
    require(candidates <= static_cast<double>(candidate_cap), errc::path_explosion,
            "path enumeration exceeds the candidate cap of " + std::to_string(candidate_cap));

    // loss of the segment between two reflectors (endpoints excluded)
    auto between_loss = [&](std::size_t a, std::size_t b) {
        const auto [lo, hi] = std::minmax(refl[a].comp_index, refl[b].comp_index);
        return prefix_loss[hi] - prefix_loss[lo + 1];
    };

    std::vector<ReflectionEvent> events;
    // depth-first walk over alternating index sequences; power only ever
    // decreases along a path, so dropping below the floor prunes the branch
    auto walk = [&](auto&& self, std::size_t at, int order, double distance, double power) -> void {
        if (power < floor_db) return;
        if (order % 2 == 1) {
            const double returned = power + refl[at].entry_loss_db;
            if (returned >= floor_db) {
                events.push_back({distance, returned, order});
            }
        }
        if (order == max_order) return;
        if (order % 2 == 1) {
            // bounce back toward the entry: next reflector is in front
            for (std::size_t j = 0; j < at; ++j) {
                self(self, j, order + 1, distance - refl[j].position_m,
                     power + between_loss(at, j) + refl[j].reflectance_db);
            }
        } else {
            for (std::size_t j = at + 1; j < refl.size(); ++j) {
                self(self, j, order + 1, distance + refl[j].position_m,
                     power + between_loss(at, j) + refl[j].reflectance_db);
            }
        }
    };
    for (std::size_t i = 0; i < refl.size(); ++i) {
        walk(walk, i, 1, refl[i].position_m,
             refl[i].entry_loss_db + refl[i].reflectance_db);
    }

    std::sort(events.begin(), events.end(), [](const ReflectionEvent& a, const ReflectionEvent& b) {
        if (a.distance_m != b.distance_m) return a.distance_m < b.distance_m;
        if (a.order != b.order) return a.order < b.order;
        return a.power_db > b.power_db;
    });
    return events;
}

/// Splits every event across the short/long interferometer arm pairs: offsets
/// {0, D, 2D} with linear weights {r^2, 2r(1-r), (1-r)^2}. Total linear power
/// per source event is conserved. r = 1 is the degenerate single-arm case.
inline std::vector<ReflectionEvent> expand_interferometer(std::span<const ReflectionEvent> events,
                                                          const InterferometerSpec& spec) {
    validate(spec);
    const double r = spec.split_ratio;
    const double weights[3] = {r * r, 2.0 * r * (1.0 - r), (1.0 - r) * (1.0 - r)};
    std::vector<ReflectionEvent> out;
    out.reserve(events.size() * 3);
    for (const ReflectionEvent& e : events) {
        for (int k = 0; k < 3; ++k) {
            if (weights[k] <= 0.0) continue;
            out.push_back({e.distance_m + static_cast<double>(k) * spec.arm_difference_m,
                           e.power_db + linear_to_db(weights[k]), e.order});
        }
    }
    std::sort(out.begin(), out.end(), [](const ReflectionEvent& a, const ReflectionEvent& b) {
        if (a.distance_m != b.distance_m) return a.distance_m < b.distance_m;
        if (a.order != b.order) return a.order < b.order;
        return a.power_db > b.power_db;
    });
    return out;
}

/// Uniformly sampled backscatter trace in dB relative to launched power.
class Trace {
public:
    Trace(double start_m, double spacing_m, std::vector<double> power_db, double noise_floor_db)
        : start_m_(start_m), spacing_m_(spacing_m), power_db_(std::move(power_db)),
          noise_floor_db_(noise_floor_db) {
        require(std::isfinite(spacing_m_) && spacing_m_ > 0.0, errc::invalid_parameter,
                "trace grid spacing must be > 0");
        require(!power_db_.empty(), errc::invalid_parameter, "trace must have samples");
        for (double v : power_db_)
            require(std::isfinite(v), errc::invalid_parameter, "trace samples must be finite");
    }

    std::size_t size() const noexcept { return power_db_.size(); }
    double start_m() const noexcept { return start_m_; }
    double spacing_m() const noexcept { return spacing_m_; }
    double distance_m(std::size_t i) const noexcept { return start_m_ + static_cast<double>(i) * spacing_m_; }
    const std::vector<double>& power_db() const noexcept { return power_db_; }
    double noise_floor_db() const noexcept { return noise_floor_db_; }

private:
    double start_m_;
    double spacing_m_;
    std::vector<double> power_db_;
    double noise_floor_db_;
};

struct SamplingGrid {
    double start_m = 0.0;
    double spacing_m = 0.25;
    std::size_t samples = 0;
};

/// Distributed Rayleigh backscatter source: a fiber stretch from start_m over
/// length_m scattering back rayleigh_db_per_m of the launched power per meter.
struct RayleighSpan {
    double start_m = 0.0;
    double length_m = 0.0;
    double rayleigh_db_per_m = kNegInfDb;
};

inline std::vector<RayleighSpan> rayleigh_spans(const OpticalCircuit& circuit) {
    std::vector<RayleighSpan> spans;
    for (const OpticalComponent& c : circuit.components()) {
        if (c.kind == ComponentKind::fiber_span && c.rayleigh_db_per_m > kNegInfDb) {
            spans.push_back({c.position_m, c.length_m, c.rayleigh_db_per_m});
        }
    }
    return spans;
}

struct TraceOptions {
    double noise_floor_db = -120.0;
    double noise_sigma_linear = 0.0;  // additive Gaussian noise on linear power; 0 disables
    std::uint64_t noise_seed = 0;
};

namespace detail {

inline void add_trace_noise(std::vector<double>& linear, const TraceOptions& opt) {
    if (opt.noise_sigma_linear <= 0.0) return;
    SplitMix64 rng(opt.noise_seed);
    const double two_pi = 6.283185307179586;
    for (std::size_t i = 0; i < linear.size(); i += 2) {
        // Box-Muller; std::normal_distribution is not bit-stable across toolchains
        const double u1 = std::max(rng.next_unit(), 1e-300);
        const double u2 = rng.next_unit();
        const double mag = std::sqrt(-2.0 * std::log(u1)) * opt.noise_sigma_linear;
        linear[i] = std::max(0.0, linear[i] + mag * std::cos(two_pi * u2));
        if (i + 1 < linear.size())
            linear[i + 1] = std::max(0.0, linear[i + 1] + mag * std::sin(two_pi * u2));
    }
}

}  // namespace detail

/// Pulsed-probe trace: each event paints a rectangular pulse of width
/// pulse_width_m centered at its distance; fiber spans add a flat Rayleigh
/// level of rayleigh_db_per_m integrated over the pulse width. Overlaps add
/// in linear power, which is what merges events closer than the pulse width.
inline Trace synthesize_otdr(std::span<const ReflectionEvent> events, double pulse_width_m,
                             const SamplingGrid& grid, std::span<const RayleighSpan> spans = {},
                             const TraceOptions& options = {}) {
    require(std::isfinite(pulse_width_m) && pulse_width_m > 0.0, errc::invalid_parameter,
            "pulse width must be > 0");
    require(grid.spacing_m > 0.0 && grid.samples >= 1, errc::invalid_parameter,
            "sampling grid must have positive spacing and at least one sample");
    require(grid.spacing_m <= pulse_width_m / 2.0, errc::invalid_parameter,
            "grid spacing must be <= half the pulse width");

    std::vector<double> linear(grid.samples, 0.0);
    const double half = pulse_width_m / 2.0;
    for (const ReflectionEvent& e : events) {
        const double p = db_to_linear(e.power_db);
        const double lo = e.distance_m - half;
        const double hi = e.distance_m + half;
        const auto first = static_cast<std::ptrdiff_t>(std::ceil((lo - grid.start_m) / grid.spacing_m));
        for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(first, 0);
             i < static_cast<std::ptrdiff_t>(grid.samples); ++i) {
            const double x = grid.start_m + static_cast<double>(i) * grid.spacing_m;
            if (x > hi) break;
            linear[static_cast<std::size_t>(i)] += p;
        }
    }
    for (const RayleighSpan& s : spans) {
        const double level = db_to_linear(s.rayleigh_db_per_m) * pulse_width_m;
        if (level <= 0.0) continue;
        for (std::size_t i = 0; i < grid.samples; ++i) {
            const double x = grid.start_m + static_cast<double>(i) * grid.spacing_m;
            if (x >= s.start_m && x <= s.start_m + s.length_m) linear[i] += level;
        }
    }
    detail::add_trace_noise(linear, options);

    const double floor_linear = db_to_linear(options.noise_floor_db);
    std::vector<double> db(grid.samples);
    for (std::size_t i = 0; i < grid.samples; ++i)
        db[i] = linear_to_db(std::max(linear[i], floor_linear));
    return Trace(grid.start_m, grid.spacing_m, std::move(db), options.noise_floor_db);
}

/// Grid covering all events (and spans) with a margin, spaced pulse/4.
inline SamplingGrid make_otdr_grid(std::span<const ReflectionEvent> events, double pulse_width_m,
                                   std::span<const RayleighSpan> spans = {}) {
    require(pulse_width_m > 0.0, errc::invalid_parameter, "pulse width must be > 0");
    double end = 0.0;
    for (const ReflectionEvent& e : events) end = std::max(end, e.distance_m);
    for (const RayleighSpan& s : spans) end = std::max(end, s.start_m + s.length_m);
    end += 5.0 * pulse_width_m;
    const double spacing = pulse_width_m / 4.0;
    return SamplingGrid{0.0, spacing, static_cast<std::size_t>(std::ceil(end / spacing)) + 1};
}

struct OfdrSweep {
    double sweep_rate_hz_per_s = 1e13;
    double duration_s = 1e-3;
    double sample_rate_hz = 1e7;
};

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kDefaultGroupIndex = 1.468;  // standard single-mode fiber

/// Swept-laser heterodyne trace. Each event beats against the internal
/// local-oscillator reflection at f = sweep_rate * (2 n_g z / c); the beat
/// amplitude is the geometric mean of the LO and event amplitudes, times the
/// coherence visibility exp(-z / coherence_length). The beat record is
/// windowed (4-term Blackman-Harris, so leakage sidelobes stay ~92 dB down
/// and do not masquerade as reflections), Fourier transformed, rescaled by
/// the LO power and window gain, and mapped back to one-way-equivalent
/// distance.
inline Trace synthesize_ofdr(std::span<const ReflectionEvent> events, const OfdrSweep& sweep,
                             double coherence_length_m, double lo_reflectance_db,
                             double group_index = kDefaultGroupIndex,
                             const TraceOptions& options = {}) {
    require(sweep.sweep_rate_hz_per_s > 0.0 && sweep.duration_s > 0.0 && sweep.sample_rate_hz > 0.0,
            errc::invalid_parameter, "sweep parameters must be positive");
    require(std::isfinite(coherence_length_m) && coherence_length_m > 0.0, errc::invalid_parameter,
            "coherence length must be > 0");
    require(std::isfinite(lo_reflectance_db) && lo_reflectance_db <= 0.0, errc::invalid_parameter,
            "LO reflectance must be finite and <= 0 dB");
    require(group_index >= 1.0, errc::invalid_parameter, "group index must be >= 1");

    const auto samples = static_cast<std::size_t>(std::llround(sweep.duration_s * sweep.sample_rate_hz));
    require(samples >= 2, errc::invalid_parameter, "sweep must cover at least two samples");

    const double hz_per_meter = sweep.sweep_rate_hz_per_s * 2.0 * group_index / kSpeedOfLight;
    double f_max = 0.0;
    for (const ReflectionEvent& e : events) f_max = std::max(f_max, e.distance_m * hz_per_meter);
    require(f_max <= sweep.sample_rate_hz / 2.0, errc::nyquist_violation,
            "maximum beat frequency " + std::to_string(f_max) + " Hz exceeds sample_rate/2");

    const double two_pi = 6.283185307179586;
    std::vector<double> window(samples);
    double window_sum = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
        const double x = two_pi * static_cast<double>(j) / static_cast<double>(samples - 1);
        window[j] = 0.35875 - 0.48829 * std::cos(x) + 0.14128 * std::cos(2.0 * x) -
                    0.01168 * std::cos(3.0 * x);
        window_sum += window[j];
    }

    const double lo_linear = db_to_linear(lo_reflectance_db);
    const double lo_amp = std::sqrt(lo_linear);
    const std::size_t padded = detail::next_pow2(samples);
    std::vector<std::complex<double>> signal(padded, {0.0, 0.0});
    for (const ReflectionEvent& e : events) {
        const double amp = lo_amp * std::sqrt(db_to_linear(e.power_db)) *
                           std::exp(-e.distance_m / coherence_length_m);
        if (amp <= 0.0) continue;
        const double omega = two_pi * e.distance_m * hz_per_meter / sweep.sample_rate_hz;
        for (std::size_t j = 0; j < samples; ++j) {
            signal[j] += window[j] * amp * std::cos(omega * static_cast<double>(j));
        }
    }
    detail::fft(signal);

    // rescale so an on-bin event reads its own power in dB
    const double bin_to_power = 4.0 / (window_sum * window_sum * lo_linear);
    const std::size_t bins = padded / 2 + 1;
    std::vector<double> linear(bins);
    for (std::size_t k = 0; k < bins; ++k) linear[k] = std::norm(signal[k]) * bin_to_power;
    detail::add_trace_noise(linear, options);

    const double hz_per_bin = sweep.sample_rate_hz / static_cast<double>(padded);
    const double meters_per_bin = hz_per_bin / hz_per_meter;
    const double floor_linear = db_to_linear(options.noise_floor_db);
    std::vector<double> db(bins);
    for (std::size_t k = 0; k < bins; ++k) db[k] = linear_to_db(std::max(linear[k], floor_linear));
    return Trace(0.0, meters_per_bin, std::move(db), options.noise_floor_db);
}

struct DetectedPeak {
    double distance_m = 0.0;
    double power_db = 0.0;
};

/// Local maxima whose topographic prominence (height above the higher of the
/// two valley floors separating them from taller terrain) reaches
/// min_prominence_db. Plateaus report their midpoint. Sorted by distance.
inline std::vector<DetectedPeak> detect_peaks(const Trace& trace, double min_prominence_db) {
    require(std::isfinite(min_prominence_db) && min_prominence_db > 0.0, errc::invalid_parameter,
            "min_prominence_db must be > 0");
    const auto& s = trace.power_db();
    const std::size_t n = s.size();
    std::vector<DetectedPeak> peaks;

    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && s[j + 1] == s[i]) ++j;  // plateau [i, j]
        const bool left_lower = (i == 0) ? (j + 1 < n) : (s[i - 1] < s[i]);
        const bool right_lower = (j + 1 == n) ? (i > 0) : (s[j + 1] < s[i]);
        if (left_lower && right_lower && !(i == 0 && j + 1 == n)) {
            const double h = s[i];
            double left_base = h;
            bool left_open = (i == 0);
            for (std::size_t k = i; k-- > 0;) {
                if (s[k] > h) break;
                left_base = std::min(left_base, s[k]);
                if (k == 0) left_open = true;
            }
            double right_base = h;
            bool right_open = (j + 1 == n);
            for (std::size_t k = j + 1; k < n; ++k) {
                if (s[k] > h) break;
                right_base = std::min(right_base, s[k]);
                if (k == n - 1) right_open = true;
            }
            // a side that runs off the trace end does not limit prominence
            double base;
            if (left_open && right_open) base = std::min(left_base, right_base);
            else if (left_open) base = right_base;
            else if (right_open) base = left_base;
            else base = std::max(left_base, right_base);
            if (h - base >= min_prominence_db) {
                const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0;
                peaks.push_back({trace.start_m() + mid * trace.spacing_m(), h});
            }
        }
        i = j + 1;
    }
    return peaks;
}

/// Audit-level handle on a setting-dependent modulator reflection: the
/// differential return between the two settings carries
/// mu_eff = mu_probe * |10^(r0/10) - 10^(r1/10)| mean photons to Eve, with
/// r0 = base_reflectance_db and r1 = r0 - |contrast_db|. Returns the
/// resulting optimal information gain.
inline InformationGain modulator_distinguishability(double contrast_db, MeanPhotonNumber mu_probe,
                                                    double base_reflectance_db = 0.0) {
    require(std::isfinite(contrast_db), errc::invalid_parameter, "contrast_db must be finite");
    require(std::isfinite(base_reflectance_db) && base_reflectance_db <= 0.0,
            errc::invalid_parameter, "base_reflectance_db must be finite and <= 0");
    const double r0 = db_to_linear(base_reflectance_db);
    const double r1 = db_to_linear(base_reflectance_db - std::abs(contrast_db));
    const double mu_eff = mu_probe.value() * std::abs(r0 - r1);
    return trojan_info(MeanPhotonNumber(mu_eff));
}

}  // namespace qta
