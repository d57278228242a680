// delta_walk.hpp
// Two walkers evolved on the (m, n) plane with a different 4x4 coin on the
// diagonal m == n. With the product coin on the diagonal this is the plain
// non-interacting two-particle walk, which makes it the brute-force
// reference for pair_walk.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "qwalk/coin.hpp"
#include "qwalk/pair_walk.hpp"

namespace qwalk {

/// Default cap on stored amplitudes, 4 per (m, n) cell.
inline constexpr std::size_t kDefaultMaxAmplitudes = std::size_t{1} << 28;

/// Thrown when an evolution would exceed its amplitude cap.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A 4x4 unitary on the coin pair, basis order (LL, LR, RL, RR).
class InteractionCoin {
public:
    explicit InteractionCoin(const Eigen::Matrix4cd& m, double tol = kNormTolerance);

    /// first x second, entry ((i,j),(k,l)) = first(i,k) * second(j,l).
    static InteractionCoin product(const CoinOperator& first, const CoinOperator& second);

    const Eigen::Matrix4cd& matrix() const { return m_; }

private:
    Eigen::Matrix4cd m_;
};

/// (1/2) [[1,1,1,1],[1,-1,-1,1],[-1,1,-1,1],[-1,-1,1,1]].
InteractionCoin delta_coin_default();

using CellAmplitudes = std::array<Complex, 4>;

/// Amplitudes on [-t, t]^2, row-major in m, 4 coin components per cell.
class JointWalkState {
public:
    static JointWalkState at_origin(const TwoCoinState& coin);
    /// `amps` must hold (2*steps+1)^2 cells and be normalized within `tol`.
    static JointWalkState from_amplitudes(int steps, std::vector<CellAmplitudes> amps,
                                          double tol = kNormTolerance);

    int steps() const { return steps_; }
    int width() const { return 2 * steps_ + 1; }
    /// Zero outside the support.
    CellAmplitudes at(int m, int n) const;
    std::span<const CellAmplitudes> amplitudes() const { return amps_; }
    double norm_squared() const;

private:
    JointWalkState(int steps, std::vector<CellAmplitudes> amps);

    int steps_ = 0;
    std::vector<CellAmplitudes> amps_;

    friend JointWalkState step_delta(const JointWalkState&, const CoinOperator&, const InteractionCoin&);
};

/// Coin stage (delta_coin on m == n, single_coin x single_coin elsewhere)
/// followed by the joint shift. The support grows by one in every direction.
JointWalkState step_delta(const JointWalkState& state, const CoinOperator& single_coin,
                          const InteractionCoin& delta_coin);

struct DeltaWalkOptions {
    CoinOperator single_coin = hadamard_coin();
    std::size_t max_amplitudes = kDefaultMaxAmplitudes;
};

/// Amplitudes needed to hold a t-step joint state.
std::size_t joint_amplitude_count(int t);

/// `t` steps from both walkers at the origin. Throws ResourceLimitError if
/// the final grid would exceed options.max_amplitudes, std::invalid_argument
/// for t < 0.
JointWalkState evolve_delta(const TwoCoinState& initial, int t, const InteractionCoin& delta_coin,
                            const DeltaWalkOptions& options = {});

/// p(m, n) = sum over coin pairs of |amp|^2; distinguishable mode.
JointDistribution joint_distribution_of(const JointWalkState& state);

/// P_s(t) for t = 0..t_max of the interacting walk.
PsTimeSeries delta_ps_timeseries(const TwoCoinState& initial, int t_max, const InteractionCoin& delta_coin,
                                 const DeltaWalkOptions& options = {});

}  // namespace qwalk
