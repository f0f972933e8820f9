#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qta/detail/splitmix64.hpp"
#include "qta/error.hpp"

namespace qta {

/// Mean photon number |alpha|^2 of a coherent state. Dimensionless, >= 0.
class MeanPhotonNumber {
public:
    explicit MeanPhotonNumber(double mu) : mu_(mu) {
        require(std::isfinite(mu) && mu >= 0.0, errc::invalid_parameter,
                "mean photon number must be finite and >= 0, got " + std::to_string(mu));
    }

    double value() const noexcept { return mu_; }

private:
    double mu_;
};

/// One-pass power transmission of a lossy channel, in (0, 1].
class TransmissionFactor {
public:
    explicit TransmissionFactor(double t) : t_(t) {
        require(std::isfinite(t) && t > 0.0 && t <= 1.0, errc::invalid_parameter,
                "transmission factor must lie in (0, 1], got " + std::to_string(t));
    }

    double value() const noexcept { return t_; }

private:
    double t_;
};

/// Finite probability vector over photon number n = 0..n_max. Entries are
/// non-negative and sum to 1 within kNormTolerance; constructions that
/// truncate an infinite distribution must leave a tail below kTailTolerance.
class PhotonNumberDistribution {
public:
    static constexpr double kNormTolerance = 1e-9;
    static constexpr double kTailTolerance = 1e-12;

    explicit PhotonNumberDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
        require(!probs_.empty(), errc::invalid_parameter, "distribution needs at least P(0)");
        double sum = 0.0;
        for (std::size_t n = 0; n < probs_.size(); ++n) {
            require(std::isfinite(probs_[n]) && probs_[n] >= 0.0, errc::invalid_parameter,
                    "P(" + std::to_string(n) + ") must be finite and >= 0");
            sum += probs_[n];
        }
        require(std::abs(sum - 1.0) <= kNormTolerance, errc::not_normalized,
                "probabilities sum to " + std::to_string(sum) + ", expected 1 within 1e-9");
    }

    static PhotonNumberDistribution vacuum() { return PhotonNumberDistribution({1.0}); }

    static PhotonNumberDistribution fock(int n) {
        require(n >= 0, errc::invalid_parameter, "Fock photon number must be >= 0");
        std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
        p.back() = 1.0;
        return PhotonNumberDistribution(std::move(p));
    }

    int n_max() const noexcept { return static_cast<int>(probs_.size()) - 1; }

    /// P(n); zero beyond n_max.
    double prob(int n) const noexcept {
        if (n < 0 || n > n_max()) return 0.0;
        return probs_[static_cast<std::size_t>(n)];
    }

    const std::vector<double>& probs() const noexcept { return probs_; }

    double mean() const noexcept {
        double m = 0.0;
        for (std::size_t n = 1; n < probs_.size(); ++n) m += static_cast<double>(n) * probs_[n];
        return m;
    }

private:
    std::vector<double> probs_;
};

inline constexpr int kDefaultTruncationCap = 4096;

/// Poisson distribution with mean mu, truncated at n_max. The discarded
/// tail must be below kTailTolerance or the construction is rejected.
inline PhotonNumberDistribution poisson_distribution(MeanPhotonNumber mu, int n_max) {
    require(n_max >= 0, errc::invalid_parameter, "n_max must be >= 0");
    const double m = mu.value();
    std::vector<double> probs(static_cast<std::size_t>(n_max) + 1);
    // term recurrence; factorials would overflow long before n = 4096
    double term = std::exp(-m);
    double covered = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        probs[static_cast<std::size_t>(n)] = term;
        covered += term;
        term *= m / static_cast<double>(n + 1);
    }
    const double tail = 1.0 - covered;
    require(tail < PhotonNumberDistribution::kTailTolerance, errc::tail_too_heavy,
            "Poisson(" + std::to_string(m) + ") truncated at n_max=" + std::to_string(n_max) +
                " leaves tail " + std::to_string(tail));
    return PhotonNumberDistribution(std::move(probs));
}

/// Poisson distribution with n_max chosen automatically so the tail is
/// comfortably below tolerance. Rejects means that would need more than
/// `cap` entries.
inline PhotonNumberDistribution poisson_distribution_auto(MeanPhotonNumber mu,
                                                          int cap = kDefaultTruncationCap) {
    const double m = mu.value();
    double term = std::exp(-m);
    double covered = term;
    int n = 0;
    while (1.0 - covered >= 0.5 * PhotonNumberDistribution::kTailTolerance) {
        require(n < cap, errc::tail_too_heavy,
                "Poisson(" + std::to_string(m) + ") needs more than " + std::to_string(cap) +
                    " entries to satisfy the truncation tolerance");
        ++n;
        term *= m / static_cast<double>(n);
        covered += term;
    }
    return poisson_distribution(mu, n);
}

/// Diagonal of the phase-averaged state: a uniformly random global phase
/// wipes the off-diagonal terms and leaves the Fock mixture |c_n|^2.
inline PhotonNumberDistribution phase_randomize(std::span<const std::complex<double>> amplitudes) {
    require(!amplitudes.empty(), errc::invalid_parameter, "amplitude vector is empty");
    std::vector<double> probs(amplitudes.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < amplitudes.size(); ++n) {
        probs[n] = std::norm(amplitudes[n]);
        sum += probs[n];
    }
    require(std::abs(sum - 1.0) <= PhotonNumberDistribution::kNormTolerance, errc::not_normalized,
            "amplitudes have squared norm " + std::to_string(sum) + ", expected 1 within 1e-9");
    return PhotonNumberDistribution(std::move(probs));
}

/// Binomial thinning by a channel of transmission t:
///   q_m = t^m * sum_{n>=m} C(n,m) (1-t)^(n-m) p_n.
/// Binomial factors are built by a term-ratio recurrence, never factorials.
inline PhotonNumberDistribution attenuate(const PhotonNumberDistribution& d, TransmissionFactor t) {
    const double tv = t.value();
    const double loss = 1.0 - tv;
    const auto& p = d.probs();
    const int n_max = d.n_max();
    std::vector<double> q(p.size(), 0.0);
    double t_pow_m = 1.0;
    for (int m = 0; m <= n_max; ++m) {
        // w(n) = C(n,m) (1-t)^(n-m), starting at w(m) = 1
        double w = 1.0;
        double acc = 0.0;
        for (int n = m; n <= n_max; ++n) {
            acc += w * p[static_cast<std::size_t>(n)];
            w *= loss * static_cast<double>(n + 1) / static_cast<double>(n + 1 - m);
        }
        q[static_cast<std::size_t>(m)] = t_pow_m * acc;
        t_pow_m *= tv;
    }
    return PhotonNumberDistribution(std::move(q));
}

/// k-th factorial moment sum_n n(n-1)...(n-k+1) P(n).
inline double factorial_moment(const PhotonNumberDistribution& d, int k) {
    require(k >= 1, errc::invalid_parameter, "factorial moment order must be >= 1");
    const auto& p = d.probs();
    double acc = 0.0;
    for (int n = k; n <= d.n_max(); ++n) {
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= static_cast<double>(n - j);
        acc += falling * p[static_cast<std::size_t>(n)];
    }
    return acc;
}

/// Exact probability of two or more photons surviving the thinning channel:
/// 1 - q_0 - q_1 of the attenuated distribution.
inline double multi_photon_prob_exact(const PhotonNumberDistribution& d, TransmissionFactor t) {
    const PhotonNumberDistribution thinned = attenuate(d, t);
    return 1.0 - thinned.prob(0) - thinned.prob(1);
}

/// Leading-order multi-photon probability <<n(n-1)>> t^2 / 2; differs from
/// the exact value by O(t^3).
inline double multi_photon_prob_leading(const PhotonNumberDistribution& d, TransmissionFactor t) {
    return factorial_moment(d, 2) * t.value() * t.value() / 2.0;
}

/// Total variation distance (1/2) sum |a_n - b_n|; the shorter vector is
/// zero-padded.
inline double tv_distance(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b) {
    const int n_top = std::max(a.n_max(), b.n_max());
    double acc = 0.0;
    for (int n = 0; n <= n_top; ++n) acc += std::abs(a.prob(n) - b.prob(n));
    return 0.5 * acc;
}

/// Empirical thinning oracle: `shots` trials of per-photon Bernoulli(t)
/// survival on an n_in-photon input. Deterministic for a fixed seed: shots
/// are consumed in fixed blocks of kMonteCarloBlock, block i drawing from
/// SplitMix64(seed + i), so any sharded execution that respects block
/// boundaries reproduces the sequential result bit for bit.
inline constexpr std::uint64_t kMonteCarloBlock = 1 << 16;

inline PhotonNumberDistribution monte_carlo_thin(int n_in, TransmissionFactor t,
                                                 std::uint64_t shots, std::uint64_t seed) {
    require(n_in >= 0, errc::invalid_parameter, "photon number must be >= 0");
    require(shots >= 1, errc::invalid_parameter, "shots must be >= 1");
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_in) + 1, 0);
    const double tv = t.value();
    std::uint64_t done = 0;
    for (std::uint64_t block = 0; done < shots; ++block) {
        detail::SplitMix64 rng(seed + block);
        const std::uint64_t in_block = std::min<std::uint64_t>(kMonteCarloBlock, shots - done);
        for (std::uint64_t s = 0; s < in_block; ++s) {
            int survivors = 0;
            for (int photon = 0; photon < n_in; ++photon) {
                if (rng.next_unit() < tv) ++survivors;
            }
            ++counts[static_cast<std::size_t>(survivors)];
        }
        done += in_block;
    }
    std::vector<double> probs(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n)
        probs[n] = static_cast<double>(counts[n]) / static_cast<double>(shots);
    return PhotonNumberDistribution(std::move(probs));
}

}  // namespace qta
