// emit.hpp
// CSV and JSON serialization of experiment results.
//
// CSV tables:
//   timeseries    t,p_same      (t,p_minus for single-particle runs)
//   distribution  m,p
//   joint         m,n,p         zero cells omitted
//   surface       x,y,p_same
//   sweep         index,ps_closed,ps_tail,gap
// Numbers are written with 17 significant digits so that they re-parse to
// the same doubles.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qwalk/experiments.hpp"

namespace qwalk {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class OutputFormat { csv, json };

/// Thrown when an output file cannot be written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_number(double v);

std::string timeseries_csv(const PsTimeSeries& series, std::string_view column = "p_same");
std::string distribution_csv(const ProbabilityDistribution& dist);
std::string joint_csv(const JointDistribution& dist);
std::string surface_csv(const std::vector<SurfacePoint>& points);
std::string sweep_csv(const SweepResult& sweep);

/// Header plus numeric rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Throws std::invalid_argument on malformed input.
CsvTable parse_csv(std::string_view text);

/// Spec echo, tool version and the conventions used.
nlohmann::json meta_json(const ExperimentResult& result);
/// Everything in one document: meta, tables, summary scalars, grid bounds.
nlohmann::json result_json(const ExperimentResult& result);
nlohmann::json sweep_json(const SweepResult& sweep);

struct EmittedFile {
    std::filesystem::path path;
    std::string contents;
};

/// Files for a result. For CSV the primary table goes to `base` and the
/// rest beside it as <stem>[.<label>].{dist,joint}.csv plus <stem>.meta.json;
/// with several cases each timeseries is <stem>.<label>.csv. For JSON a
/// single document goes to `base`.
std::vector<EmittedFile> render(const ExperimentResult& result, OutputFormat format,
                                const std::filesystem::path& base);

std::vector<EmittedFile> render_sweep(const SweepResult& sweep, OutputFormat format,
                                      const std::filesystem::path& base);

/// Creates parent directories as needed. Throws OutputError.
void write_files(const std::vector<EmittedFile>& files);

}  // namespace qwalk
