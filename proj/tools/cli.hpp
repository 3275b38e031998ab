#pragma once

#include <string>
#include <vector>

#include "cyclecast/pipeline.hpp"
#include "cyclecast/series.hpp"

namespace cyclecast::cli {

/// Thrown for bad arguments or unusable inputs (exit code 1, as opposed to
/// computation failures which exit with 2).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run one subcommand. argv excludes the program name. Returns the process
/// exit code: 0 success, 1 input/validation error, 2 computation failure.
int dispatch(const std::vector<std::string>& args);

/// Residual fixture format: `t,residual` CSV with a header row, t ascending.
ResidualSeries read_residual_csv_file(const std::string& path);
void write_residual_csv_file(const ResidualSeries& x, const std::string& path);

/// Flat key-value config file (# comments, key = value lines).
PipelineConfig load_pipeline_config(const std::string& path);

}  // namespace cyclecast::cli
