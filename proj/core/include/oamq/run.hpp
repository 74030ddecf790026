#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oamq/column.hpp"
#include "oamq/mode_fields.hpp"
#include "oamq/physics.hpp"
#include "oamq/qubit.hpp"

namespace oamq {

struct RunRecord {
  std::string label;
  int line = 0;
  GateMatrix gate;
  QubitState state;
  BlochVector bloch_vector;
  double cumulative_z = 0;  // m
  double cumulative_t = 0;  // s
  std::optional<std::string> image;
};

struct RunLog {
  BeamEnvironment beam;
  std::vector<RunRecord> records;
};

struct RunOptions {
  /// Images, field dumps and the JSON log are written here. Empty disables
  /// all file output (snapshots are still synthesised and rendered).
  std::filesystem::path outdir;
  std::string log_name = "runlog.json";
  /// Also write <snapshot stem>.lgf field dumps next to the images.
  bool dump_fields = false;
};

/// Converts the script's drift parameterization to a duration (s).
double drift_duration(const Drift& drift, const BeamEnvironment& env);

/// Transverse grid of a script; magnetic-waist units need a non-zero field.
TransverseGrid resolve_grid(const GridDecl& grid, const BeamEnvironment& env);

/// Runs the column element by element. Physics failures are rethrown as
/// DomainError prefixed with the element's source line.
RunLog run_column(const ColumnSpec& spec, const RunOptions& options = {});

/// One JSON object with a fixed key order; complex numbers are [re, im]
/// pairs with 17 significant digits.
std::string to_json(const RunLog& log);

}  // namespace oamq
