#include "qwalk/walk.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace qwalk {

WalkState::WalkState(int steps, std::vector<SiteAmplitudes> amps)
    : steps_(steps), amps_(std::move(amps)) {}

WalkState WalkState::at_origin(const CoinState& coin) {
    require_normalized(coin);
    return WalkState{0, {SiteAmplitudes{coin.a, coin.b}}};
}

WalkState WalkState::from_amplitudes(int steps, std::vector<SiteAmplitudes> amps, double tol) {
    if (steps < 0) throw std::invalid_argument("walk state: negative step count");
    if (amps.size() != static_cast<std::size_t>(2 * steps + 1)) {
        throw std::invalid_argument("walk state: expected 2*steps+1 sites");
    }
    WalkState s{steps, std::move(amps)};
    if (std::abs(s.norm_squared() - 1.0) > tol) {
        throw std::invalid_argument("walk state: amplitudes are not normalized");
    }
    return s;
}

Complex WalkState::left(int m) const {
    if (m < -steps_ || m > steps_) return {};
    return amps_[static_cast<std::size_t>(m + steps_)][0];
}

Complex WalkState::right(int m) const {
    if (m < -steps_ || m > steps_) return {};
    return amps_[static_cast<std::size_t>(m + steps_)][1];
}

double WalkState::norm_squared() const {
    double acc = 0.0;
    for (const auto& s : amps_) acc += std::norm(s[0]) + std::norm(s[1]);
    return acc;
}

WalkState step(const WalkState& state, const CoinOperator& coin) {
    const Eigen::Matrix2cd& c = coin.matrix();
    const int t = state.steps_;
    std::vector<SiteAmplitudes> out(static_cast<std::size_t>(2 * t + 3));

    // Site m of the input sits at index m + t; after the shift the output
    // support is [-(t+1), t+1] with offset t + 1, so L lands at index m + t
    // and R at index m + t + 2.
    for (std::size_t i = 0; i < state.amps_.size(); ++i) {
        const Complex l = state.amps_[i][0];
        const Complex r = state.amps_[i][1];
        out[i][0] = c(0, 0) * l + c(0, 1) * r;
        out[i + 2][1] = c(1, 0) * l + c(1, 1) * r;
    }
    return WalkState{t + 1, std::move(out)};
}

WalkState evolve(const CoinState& initial, int t, const CoinOperator& coin) {
    if (t < 0) throw std::invalid_argument("evolve: negative step count");
    WalkState s = WalkState::at_origin(initial);
    for (int i = 0; i < t; ++i) s = step(s, coin);
    return s;
}

double ProbabilityDistribution::at(int m) const {
    if (m < -steps || m > steps) return 0.0;
    return p[static_cast<std::size_t>(m + steps)];
}

double ProbabilityDistribution::total() const {
    return std::accumulate(p.begin(), p.end(), 0.0);
}

ProbabilityDistribution position_distribution(const WalkState& state) {
    ProbabilityDistribution d;
    d.steps = state.steps();
    d.p.reserve(state.amplitudes().size());
    for (const auto& s : state.amplitudes()) d.p.push_back(std::norm(s[0]) + std::norm(s[1]));
    return d;
}

HalfLineSplit half_line_split(const ProbabilityDistribution& dist) {
    HalfLineSplit h;
    for (int m = -dist.steps; m <= dist.steps; ++m) {
        if (m <= 0) {
            h.minus += dist.at(m);
        } else {
            h.plus += dist.at(m);
        }
    }
    return h;
}

}  // namespace qwalk
