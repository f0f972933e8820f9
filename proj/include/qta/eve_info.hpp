#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qta/error.hpp"
#include "qta/photon_stats.hpp"

namespace qta {

inline constexpr double kLn2 = 0.6931471805599453;

/// Shannon bits per qubit, in [0, 1].
class InformationGain {
public:
    explicit InformationGain(double bits) : bits_(bits) {
        require(std::isfinite(bits) && bits >= 0.0 && bits <= 1.0, errc::invalid_parameter,
                "information gain must lie in [0, 1], got " + std::to_string(bits));
    }

    double bits() const noexcept { return bits_; }

private:
    double bits_;
};

/// Optimal guessing probability for a binary discrimination, in [1/2, 1].
class DiscriminationProbability {
public:
    explicit DiscriminationProbability(double p) : p_(p) {
        require(std::isfinite(p) && p >= 0.5 && p <= 1.0, errc::invalid_parameter,
                "discrimination probability must lie in [1/2, 1], got " + std::to_string(p));
    }

    double value() const noexcept { return p_; }

private:
    double p_;
};

/// Binary entropy -p log2 p - (1-p) log2 (1-p), with 0 log 0 := 0.
inline double binary_entropy(double p) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, errc::invalid_parameter,
            "binary entropy argument must lie in [0, 1], got " + std::to_string(p));
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

/// Optimal probability of telling |alpha>|0> from |0>|alpha> apart:
/// (1 + sqrt(1 - e^(-2 mu))) / 2. The radicand is evaluated as -expm1(-2 mu),
/// which stays accurate for mu near zero.
inline DiscriminationProbability discrimination_p(MeanPhotonNumber mu) {
    const double s = std::sqrt(-std::expm1(-2.0 * mu.value()));
    return DiscriminationProbability(0.5 * (1.0 + s));
}

/// Per-qubit information available from a coherent back-reflection whose
/// phase reference Eve still holds: 1 - H(p).
inline InformationGain trojan_info(MeanPhotonNumber mu) {
    const double bits = 1.0 - binary_entropy(discrimination_p(mu).value());
    return InformationGain(std::clamp(bits, 0.0, 1.0));
}

/// Small-signal expansion mu / ln 2, clamped to one bit. Only meaningful for
/// mu << 1 but never emits an out-of-range value.
inline InformationGain trojan_info_small_mu(MeanPhotonNumber mu) {
    return InformationGain(std::min(1.0, mu.value() / kLn2));
}

/// Probability that a coherent pulse of mean mu is not empty: 1 - e^(-mu).
inline double non_empty_prob(MeanPhotonNumber mu) { return -std::expm1(-mu.value()); }

/// Per-qubit information once the global phase has been randomized: Eve's
/// best measurement is photon counting, so the gain equals the probability
/// that the pulse is non-empty.
inline InformationGain reduced_info(MeanPhotonNumber mu) {
    return InformationGain(non_empty_prob(mu));
}

/// trojan_info / reduced_info; approaches 1/ln 2 as mu -> 0.
inline double randomization_gain_ratio(MeanPhotonNumber mu) {
    require(mu.value() > 0.0, errc::invalid_parameter, "gain ratio is undefined at mu = 0");
    return trojan_info(mu).bits() / reduced_info(mu).bits();
}

struct InfoSweepRow {
    double mu;
    double trojan_bits;
    double reduced_bits;
    double ratio;  // 0 at mu = 0, where the ratio is undefined
};

inline std::vector<InfoSweepRow> info_gain_sweep(std::span<const double> mu_grid) {
    std::vector<InfoSweepRow> rows;
    rows.reserve(mu_grid.size());
    for (double mu : mu_grid) {
        const MeanPhotonNumber m(mu);
        InfoSweepRow row{mu, trojan_info(m).bits(), reduced_info(m).bits(), 0.0};
        if (mu > 0.0) row.ratio = row.trojan_bits / row.reduced_bits;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qta
