// walk.hpp
// Exact single-particle evolution of the coined walk on the line.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// (psi_L(m), psi_R(m)) at one site.
using SiteAmplitudes = std::array<Complex, 2>;

/// Amplitudes psi_L(m, t), psi_R(m, t) for m in [-t, t], stored densely at
/// index m + t.
class WalkState {
public:
    /// The walker at the origin with the given coin, t = 0.
    static WalkState at_origin(const CoinState& coin);

    /// Arbitrary state on [-steps, steps]; `amps` must hold 2*steps + 1 sites
    /// and be normalized within `tol`.
    static WalkState from_amplitudes(int steps, std::vector<SiteAmplitudes> amps,
                                     double tol = kNormTolerance);

    int steps() const { return steps_; }
    int min_position() const { return -steps_; }
    int max_position() const { return steps_; }

    /// Zero outside the support.
    Complex left(int m) const;
    Complex right(int m) const;

    std::span<const SiteAmplitudes> amplitudes() const { return amps_; }
    double norm_squared() const;

private:
    WalkState(int steps, std::vector<SiteAmplitudes> amps);

    int steps_ = 0;
    std::vector<SiteAmplitudes> amps_;

    friend WalkState step(const WalkState& state, const CoinOperator& coin);
};

/// p(m, t) for m in [-t, t] at index m + t.
struct ProbabilityDistribution {
    int steps = 0;
    std::vector<double> p;

    double at(int m) const;
    double total() const;
};

/// P- sums m <= 0 (the origin counts as negative), P+ sums m >= 1.
struct HalfLineSplit {
    double minus = 0.0;
    double plus = 0.0;
};

/// One walk step U = S (I x C): coin at every site, then L -> m-1, R -> m+1.
WalkState step(const WalkState& state, const CoinOperator& coin);

/// `t` steps from the origin. Throws std::invalid_argument for t < 0.
WalkState evolve(const CoinState& initial, int t, const CoinOperator& coin);

ProbabilityDistribution position_distribution(const WalkState& state);

HalfLineSplit half_line_split(const ProbabilityDistribution& dist);

}  // namespace qwalk
