// experiments.hpp
// Reproducible experiment recipes: a spec names the walk, the initial states
// and the checks to apply; run() produces the tables and summary scalars.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qwalk/asymptotics.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/delta_walk.hpp"
#include "qwalk/pair_walk.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class RunMode { single, pair, boson, fermion, delta, surface };

std::string_view to_string(RunMode mode);

/// Thrown for specs whose parts do not fit together.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No state (boson/fermion), a single coin, or a coin pair.
using InitialState = std::variant<std::monostate, CoinState, TwoCoinState>;

/// Pass condition for a case. With neither field set the case only reports.
struct Expectation {
    /// |tail - prediction| must not exceed this; prediction comes from the
    /// closed-form asymptotics.
    std::optional<double> tolerance;
    /// Tail average must reach this.
    std::optional<double> lower_bound;
    /// Tail average must be strictly above this.
    std::optional<double> strict_lower_bound;
};

struct ExperimentCase {
    std::string label;
    InitialState state;
    Expectation expect;
};

struct Outputs {
    bool timeseries = true;
    bool distribution = false;
    bool joint = false;
};

/// Steps [first, last] averaged over, even t only when `even_only`.
struct TailWindow {
    int first = 0;
    int last = 0;
    bool even_only = true;
};

/// Final 20% of the steps, even t only.
TailWindow default_tail_window(int steps);

enum class SurfaceKind {
    /// Grid over (|h1+|^2, |h2+|^2) of the separable limit.
    separable,
    /// Grid over (|h++|^2, |h--|^2) of the general limit, cells with sum <= 1.
    entangled,
};

struct SurfaceGrid {
    SurfaceKind kind = SurfaceKind::separable;
    int points = 21;
};

struct ExperimentSpec {
    std::string name;
    RunMode mode = RunMode::pair;
    int steps = 100;
    std::vector<ExperimentCase> cases;
    std::optional<InteractionCoin> interaction_coin;
    Outputs outputs;
    std::optional<TailWindow> window;
    std::optional<SurfaceGrid> surface;
    std::size_t max_amplitudes = kDefaultMaxAmplitudes;
};

/// Throws SpecError when mode, states, coin and outputs are inconsistent.
void validate(const ExperimentSpec& spec);

struct CaseResult {
    std::string label;
    InitialState state;
    /// P_s(t) for pair-type modes, P-(t) for single mode.
    PsTimeSeries series;
    std::optional<ProbabilityDistribution> distribution;
    std::optional<JointDistribution> joint;
    double final_value = 0.0;
    double tail_average = 0.0;
    std::optional<double> prediction;
    std::optional<double> gap;
    bool passed = true;
};

struct SurfacePoint {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
};

struct ExperimentResult {
    ExperimentSpec spec;
    TailWindow window;
    std::vector<CaseResult> cases;
    std::vector<SurfacePoint> surface;

    bool passed() const;
};

ExperimentResult run(const ExperimentSpec& spec);

/// "fig1", "fig1_2", "fig1_3", "fig2", "fig2_2", "fig6", "bosons", "fermions".
ExperimentSpec preset(std::string_view name);
std::vector<std::string> preset_names();

double tail_average(const PsTimeSeries& series, const TailWindow& window);

/// Haar-like random states: Gaussian components, normalized.
CoinState random_coin_state(std::mt19937_64& rng);
TwoCoinState random_two_coin_state(std::mt19937_64& rng);

/// Random-state cross-check of the closed-form limit against simulation.
struct SweepSpec {
    int count = 20;
    int steps = 200;
    std::uint64_t seed = 1;
};

struct SweepRow {
    int index = 0;
    TwoCoinState state;
    double closed_form = 0.0;
    double tail_average = 0.0;
    double gap = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    TailWindow window;
    std::vector<SweepRow> rows;
};

SweepResult run_sweep(const SweepSpec& spec);

}  // namespace qwalk
