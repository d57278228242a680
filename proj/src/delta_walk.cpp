#include "qwalk/delta_walk.hpp"

#include <string>
#include <utility>

namespace qwalk {

namespace {

std::size_t cell_index(std::ptrdiff_t row, std::ptrdiff_t col, std::ptrdiff_t width) {
    return static_cast<std::size_t>(row * width + col);
}

}  // namespace

InteractionCoin::InteractionCoin(const Eigen::Matrix4cd& m, double tol) : m_(m) {
    const Eigen::Matrix4cd defect = m_.adjoint() * m_ - Eigen::Matrix4cd::Identity();
    if (defect.cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("interaction coin is not unitary");
    }
}

InteractionCoin InteractionCoin::product(const CoinOperator& first, const CoinOperator& second) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    k(2 * i + j, 2 * a + b) = first.matrix()(i, a) * second.matrix()(j, b);
    return InteractionCoin{k};
}

InteractionCoin delta_coin_default() {
    Eigen::Matrix4cd m;
    m << 1, 1, 1, 1,
         1, -1, -1, 1,
        -1, 1, -1, 1,
        -1, -1, 1, 1;
    return InteractionCoin{0.5 * m};
}

JointWalkState::JointWalkState(int steps, std::vector<CellAmplitudes> amps)
    : steps_(steps), amps_(std::move(amps)) {}

JointWalkState JointWalkState::at_origin(const TwoCoinState& coin) {
    require_normalized(coin);
    return JointWalkState{0, {coin.c}};
}

JointWalkState JointWalkState::from_amplitudes(int steps, std::vector<CellAmplitudes> amps, double tol) {
    if (steps < 0) throw std::invalid_argument("joint walk state: negative step count");
    const auto w = static_cast<std::size_t>(2 * steps + 1);
    if (amps.size() != w * w) throw std::invalid_argument("joint walk state: expected (2*steps+1)^2 cells");
    JointWalkState s{steps, std::move(amps)};
    if (std::abs(s.norm_squared() - 1.0) > tol) {
        throw std::invalid_argument("joint walk state: amplitudes are not normalized");
    }
    return s;
}

CellAmplitudes JointWalkState::at(int m, int n) const {
    if (m < -steps_ || m > steps_ || n < -steps_ || n > steps_) return {};
    return amps_[cell_index(m + steps_, n + steps_, width())];
}

double JointWalkState::norm_squared() const {
    double acc = 0.0;
    for (const auto& c : amps_)
        for (const auto& x : c) acc += std::norm(x);
    return acc;
}

JointWalkState step_delta(const JointWalkState& state, const CoinOperator& single_coin,
                          const InteractionCoin& delta_coin) {
    const Eigen::Matrix4cd off_diagonal = InteractionCoin::product(single_coin, single_coin).matrix();
    const Eigen::Matrix4cd& diagonal = delta_coin.matrix();

    const std::ptrdiff_t w_in = state.width();
    const std::ptrdiff_t w_out = w_in + 2;
    std::vector<CellAmplitudes> out(static_cast<std::size_t>(w_out * w_out));

    // Input cell (r, c) = (m + t, n + t). With output offset t + 1 a move to
    // m - 1 lands on row r and a move to m + 1 on row r + 2. Every output
    // component is written by exactly one input cell, so rows are independent.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < w_in; ++r) {
        for (std::ptrdiff_t c = 0; c < w_in; ++c) {
            const CellAmplitudes& a = state.amps_[cell_index(r, c, w_in)];
            const Eigen::Matrix4cd& coin = r == c ? diagonal : off_diagonal;
            for (int k = 0; k < 4; ++k) {
                const Complex v = coin(k, 0) * a[0] + coin(k, 1) * a[1] + coin(k, 2) * a[2] + coin(k, 3) * a[3];
                const std::ptrdiff_t row = r + ((k & 2) ? 2 : 0);  // particle 1: L or R
                const std::ptrdiff_t col = c + ((k & 1) ? 2 : 0);  // particle 2: L or R
                out[cell_index(row, col, w_out)][static_cast<std::size_t>(k)] = v;
            }
        }
    }
    return JointWalkState{state.steps_ + 1, std::move(out)};
}

std::size_t joint_amplitude_count(int t) {
    const auto w = static_cast<std::size_t>(2 * t + 1);
    return 4 * w * w;
}

JointWalkState evolve_delta(const TwoCoinState& initial, int t, const InteractionCoin& delta_coin,
                            const DeltaWalkOptions& options) {
    if (t < 0) throw std::invalid_argument("evolve_delta: negative step count");
    const std::size_t needed = joint_amplitude_count(t);
    if (needed > options.max_amplitudes) {
        throw ResourceLimitError("evolve_delta: " + std::to_string(t) + " steps need " + std::to_string(needed) +
                                 " amplitudes, cap is " + std::to_string(options.max_amplitudes));
    }
    JointWalkState s = JointWalkState::at_origin(initial);
    for (int i = 0; i < t; ++i) s = step_delta(s, options.single_coin, delta_coin);
    return s;
}

JointDistribution joint_distribution_of(const JointWalkState& state) {
    JointDistribution d;
    d.steps = state.steps();
    d.mode = PairSymmetry::distinguishable;
    d.p.reserve(state.amplitudes().size());
    for (const auto& c : state.amplitudes()) {
        d.p.push_back(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]) + std::norm(c[3]));
    }
    return d;
}

PsTimeSeries delta_ps_timeseries(const TwoCoinState& initial, int t_max, const InteractionCoin& delta_coin,
                                 const DeltaWalkOptions& options) {
    if (t_max < 0) throw std::invalid_argument("delta_ps_timeseries: negative t_max");
    if (joint_amplitude_count(t_max) > options.max_amplitudes) {
        throw ResourceLimitError("delta_ps_timeseries: " + std::to_string(t_max) + " steps exceed amplitude cap " +
                                 std::to_string(options.max_amplitudes));
    }
    PsTimeSeries out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    JointWalkState s = JointWalkState::at_origin(initial);
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) s = step_delta(s, options.single_coin, delta_coin);
        out.push_back({t, p_same_side(joint_distribution_of(s))});
    }
    return out;
}

}  // namespace qwalk
