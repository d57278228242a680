#include "qwalk/emit.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qwalk {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json state_json(const InitialState& s) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CoinState>) {
                return json{{"kind", "coin"}, {"amplitudes", {complex_json(v.a), complex_json(v.b)}}};
            } else if constexpr (std::is_same_v<T, TwoCoinState>) {
                json amps = json::array();
                for (const auto& x : v.c) amps.push_back(complex_json(x));
                return json{{"kind", "two_coin"}, {"order", "LL,LR,RL,RR"}, {"amplitudes", amps}};
            } else {
                return json{{"kind", "fixed"}, {"occupation", "1_(0,L) 1_(0,R)"}};
            }
        },
        s);
}

json matrix_json(const Eigen::Matrix4cd& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json window_json(const TailWindow& w) {
    return json{{"first", w.first}, {"last", w.last}, {"even_only", w.even_only}};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string series_column(const ExperimentSpec& spec) {
    return spec.mode == RunMode::single ? "p_minus" : "p_same";
}

std::filesystem::path sibling(const std::filesystem::path& base, const std::string& suffix) {
    return base.parent_path() / (base.stem().string() + suffix);
}

std::string label_part(const ExperimentResult& r, const CaseResult& c) {
    return r.cases.size() > 1 ? "." + c.label : "";
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timeseries_csv(const PsTimeSeries& series, std::string_view column) {
    std::string out = "t," + std::string(column) + "\n";
    for (const auto& p : series) out += std::to_string(p.t) + "," + format_number(p.p_same) + "\n";
    return out;
}

std::string distribution_csv(const ProbabilityDistribution& dist) {
    std::string out = "m,p\n";
    for (int m = -dist.steps; m <= dist.steps; ++m) {
        out += std::to_string(m) + "," + format_number(dist.at(m)) + "\n";
    }
    return out;
}

std::string joint_csv(const JointDistribution& dist) {
    std::string out = "m,n,p\n";
    for (int m = -dist.steps; m <= dist.steps; ++m) {
        for (int n = -dist.steps; n <= dist.steps; ++n) {
            const double p = dist.at(m, n);
            if (p == 0.0) continue;
            out += std::to_string(m) + "," + std::to_string(n) + "," + format_number(p) + "\n";
        }
    }
    return out;
}

std::string surface_csv(const std::vector<SurfacePoint>& points) {
    std::string out = "x,y,p_same\n";
    for (const auto& p : points) {
        out += format_number(p.x) + "," + format_number(p.y) + "," + format_number(p.value) + "\n";
    }
    return out;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string out = "index,ps_closed,ps_tail,gap\n";
    for (const auto& r : sweep.rows) {
        out += std::to_string(r.index) + "," + format_number(r.closed_form) + "," + format_number(r.tail_average) +
               "," + format_number(r.gap) + "\n";
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
    {
        std::istringstream h{line};
        std::string field;
        while (std::getline(h, field, ',')) table.header.push_back(field);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream r{line};
        std::string field;
        while (std::getline(r, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0') throw std::invalid_argument("csv: bad number '" + field + "'");
            row.push_back(v);
        }
        if (row.size() != table.header.size()) throw std::invalid_argument("csv: ragged row");
        table.rows.push_back(std::move(row));
    }
    return table;
}

json meta_json(const ExperimentResult& result) {
    const ExperimentSpec& s = result.spec;
    json cases = json::array();
    for (const auto& c : s.cases) {
        cases.push_back({{"label", c.label},
                         {"state", state_json(c.state)},
                         {"tolerance", optional_number(c.expect.tolerance)},
                         {"lower_bound", optional_number(c.expect.lower_bound)},
                         {"strict_lower_bound", optional_number(c.expect.strict_lower_bound)}});
    }
    json spec{{"name", s.name},
              {"mode", std::string(to_string(s.mode))},
              {"steps", s.steps},
              {"cases", cases},
              {"window", window_json(result.window)},
              {"max_amplitudes", s.max_amplitudes}};
    spec["interaction_coin"] = s.interaction_coin ? matrix_json(s.interaction_coin->matrix()) : json(nullptr);
    if (s.surface) {
        spec["surface"] = {{"kind", s.surface->kind == SurfaceKind::separable ? "separable" : "entangled"},
                           {"points", s.surface->points}};
    }
    return json{{"tool", "qwalk"},
                {"version", std::string(kToolVersion)},
                {"spec", spec},
                {"conventions",
                 {{"half_line", "m <= 0 counts as the negative side"},
                  {"coin_order", "LL,LR,RL,RR (first letter: particle 1)"},
                  {"single_coin", "Hadamard (1/sqrt2)[[1,1],[1,-1]]"},
                  {"shift", "L: m -> m-1, R: m -> m+1"},
                  {"ordered_pairs", "indistinguishable joint tables hold m >= n only"}}}};
}

json result_json(const ExperimentResult& result) {
    json doc{{"meta", meta_json(result)}, {"passed", result.passed()}};
    json cases = json::array();
    const std::string column = series_column(result.spec);
    for (const auto& c : result.cases) {
        json jc{{"label", c.label},
                {"final", c.final_value},
                {"tail_average", c.tail_average},
                {"window", window_json(result.window)},
                {"prediction", optional_number(c.prediction)},
                {"gap", optional_number(c.gap)},
                {"passed", c.passed}};
        if (result.spec.outputs.timeseries) {
            json ts = json::array();
            for (const auto& p : c.series) ts.push_back({{"t", p.t}, {column, p.p_same}});
            jc["timeseries"] = ts;
        }
        if (c.distribution) {
            json d = json::array();
            for (int m = -c.distribution->steps; m <= c.distribution->steps; ++m) {
                d.push_back({{"m", m}, {"p", c.distribution->at(m)}});
            }
            jc["distribution"] = d;
        }
        if (c.joint) {
            const int t = c.joint->steps;
            json cells = json::array();
            for (int m = -t; m <= t; ++m)
                for (int n = -t; n <= t; ++n)
                    if (const double p = c.joint->at(m, n); p != 0.0) cells.push_back({{"m", m}, {"n", n}, {"p", p}});
            jc["joint"] = {{"m_min", -t},
                           {"m_max", t},
                           {"n_min", -t},
                           {"n_max", t},
                           {"mode", c.joint->mode == PairSymmetry::ordered_pairs ? "ordered_pairs" : "distinguishable"},
                           {"cells", cells}};
        }
        cases.push_back(jc);
    }
    doc["cases"] = cases;
    if (!result.surface.empty()) {
        json pts = json::array();
        for (const auto& p : result.surface) pts.push_back({{"x", p.x}, {"y", p.y}, {"p_same", p.value}});
        doc["surface"] = pts;
    }
    return doc;
}

json sweep_json(const SweepResult& sweep) {
    json rows = json::array();
    for (const auto& r : sweep.rows) {
        rows.push_back({{"index", r.index},
                        {"state", state_json(r.state)},
                        {"ps_closed", r.closed_form},
                        {"ps_tail", r.tail_average},
                        {"gap", r.gap}});
    }
    return json{{"tool", "qwalk"},
                {"version", std::string(kToolVersion)},
                {"count", sweep.spec.count},
                {"steps", sweep.spec.steps},
                {"seed", sweep.spec.seed},
                {"window", window_json(sweep.window)},
                {"rows", rows}};
}

std::vector<EmittedFile> render(const ExperimentResult& result, OutputFormat format,
                                const std::filesystem::path& base) {
    if (format == OutputFormat::json) return {{base, result_json(result).dump(2) + "\n"}};

    std::vector<EmittedFile> files;
    if (result.spec.mode == RunMode::surface) {
        files.push_back({base, surface_csv(result.surface)});
    }
    const std::string column = series_column(result.spec);
    for (const auto& c : result.cases) {
        const std::string part = label_part(result, c);
        if (result.spec.outputs.timeseries) {
            const auto path = part.empty() ? base : sibling(base, part + ".csv");
            files.push_back({path, timeseries_csv(c.series, column)});
        }
        if (c.distribution) files.push_back({sibling(base, part + ".dist.csv"), distribution_csv(*c.distribution)});
        if (c.joint) files.push_back({sibling(base, part + ".joint.csv"), joint_csv(*c.joint)});
    }
    files.push_back({sibling(base, ".meta.json"), meta_json(result).dump(2) + "\n"});
    return files;
}

std::vector<EmittedFile> render_sweep(const SweepResult& sweep, OutputFormat format,
                                      const std::filesystem::path& base) {
    if (format == OutputFormat::json) return {{base, sweep_json(sweep).dump(2) + "\n"}};
    return {{base, sweep_csv(sweep)}};
}

void write_files(const std::vector<EmittedFile>& files) {
    for (const auto& f : files) {
        std::error_code ec;
        if (f.path.has_parent_path()) std::filesystem::create_directories(f.path.parent_path(), ec);
        std::ofstream out(f.path, std::ios::binary | std::ios::trunc);
        if (!out) throw OutputError("cannot write " + f.path.string());
        out << f.contents;
        if (!out) throw OutputError("write failed for " + f.path.string());
    }
}

}  // namespace qwalk
