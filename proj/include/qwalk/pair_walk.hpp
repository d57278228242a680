// pair_walk.hpp
// Two non-interacting walkers started together at the origin.
//
// Joint quantities are assembled from the two single-particle walks started
// in |L> and |R>; no walk on the (m, n) plane is ever run here. The
// coin-pair basis order is (LL, LR, RL, RR), with the first letter belonging
// to particle 1.

#pragma once

#include <array>
#include <string_view>
#include <variant>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum CoinPair : int { LL = 0, LR = 1, RL = 2, RR = 3 };

struct TwoCoinState {
    std::array<Complex, 4> c{Complex{1.0, 0.0}, {}, {}, {}};

    Complex operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    double norm_squared() const;
    bool is_normalized(double tol = kNormTolerance) const;
};

void require_normalized(const TwoCoinState& state, double tol = kNormTolerance);

/// |first> x |second>.
TwoCoinState tensor(const CoinState& first, const CoinState& second);

enum class BellKind { psi_plus, psi_minus, phi_plus, phi_minus };

TwoCoinState bell_state(BellKind kind);
/// Accepts "psi+", "psi-", "phi+", "phi-"; throws std::invalid_argument otherwise.
TwoCoinState bell_state(std::string_view name);

/// Coordinates in the product eigenbasis |chi^a>|chi^b>, a, b in {+, -}.
struct HadamardCoords2 {
    Complex pp, pm, mp, mm;
};

HadamardCoords2 to_hadamard_coords2(const TwoCoinState& state);
TwoCoinState from_hadamard_coords2(const HadamardCoords2& h);

enum class PairSymmetry {
    /// Full (m, n) grid, particle 1 at m.
    distinguishable,
    /// Indistinguishable particles, only cells with m >= n are populated and
    /// a diagonal cell carries the full probability of double occupancy.
    ordered_pairs,
};

/// p(m, n, t) over [-t, t]^2, row-major in m with n contiguous.
struct JointDistribution {
    int steps = 0;
    PairSymmetry mode = PairSymmetry::distinguishable;
    std::vector<double> p;

    int width() const { return 2 * steps + 1; }
    double at(int m, int n) const;
    double total() const;
    /// Sum over n for each m.
    ProbabilityDistribution marginal_first() const;
};

/// Walks started from |L> and |R>; their amplitudes psi^(L), psi^(R) are
/// the building blocks for every joint quantity in this module.
struct BasisWalks {
    WalkState from_left;
    WalkState from_right;

    static BasisWalks at_origin();
    int steps() const { return from_left.steps(); }
    BasisWalks advanced(const CoinOperator& coin) const;
};

BasisWalks basis_walks(int t, const CoinOperator& coin);

JointDistribution joint_distribution_distinguishable(const TwoCoinState& state, const BasisWalks& walks);
JointDistribution joint_distribution_distinguishable(const TwoCoinState& state, int t,
                                                     const CoinOperator& coin = hadamard_coin());

/// phi(m) = psi_L^(L) psi_L^(R) + psi_R^(L) psi_R^(R) at each site.
/// Throws std::domain_error if any amplitude has an imaginary part above
/// 1e-12, which happens for coins that are not real.
std::vector<double> overlap_profile(const BasisWalks& walks);

/// I(t) = (phi-)^2 + (phi+)^2 with the half-line sums of overlap_profile.
double interference_term(const BasisWalks& walks);
double interference_term(int t, const CoinOperator& coin = hadamard_coin());

/// Probability that both particles are on the same half-line (origin on the
/// negative side). Ordered-pair distributions are summed over m >= n only.
double p_same_side(const JointDistribution& dist);

/// Two bosons, one in (0, L) and one in (0, R).
JointDistribution boson_joint_distribution(const BasisWalks& walks);
JointDistribution boson_joint_distribution(int t);
/// Two fermions, one in (0, L) and one in (0, R).
JointDistribution fermion_joint_distribution(const BasisWalks& walks);
JointDistribution fermion_joint_distribution(int t);

enum class Species { boson, fermion };

/// What to run a P_s time series for.
using PairSource = std::variant<TwoCoinState, Species>;

struct PsPoint {
    int t = 0;
    double p_same = 0.0;
};

using PsTimeSeries = std::vector<PsPoint>;

/// P_s(t) for t = 0..t_max under the Hadamard coin.
PsTimeSeries ps_timeseries(const PairSource& source, int t_max);

}  // namespace qwalk
