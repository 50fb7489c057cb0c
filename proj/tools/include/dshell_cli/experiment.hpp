// Experiment plans for the dshell CLI: JSON config parsing, a worker pool over
// plan cells and the CSV/JSON/plot-script reporter.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "diracshell/suites.hpp"

namespace dshell::cli {

inline constexpr int kSchemaVersion = 1;

struct PlanCell {
  std::string suite;
  SuiteConfig config;
  std::string label;  // file stem of this cell's outputs
};

struct ExperimentPlan {
  std::vector<PlanCell> cells;
  Bands bands;
  std::string config_text;  // canonical JSON the plan was built from
  std::string config_hash;  // git blob hash of config_text
};

// Throws std::invalid_argument with the offending key on unknown keys, wrong
// types, empty or non-geometric sweeps and unknown suites.
ExperimentPlan parse_plan(const nlohmann::json& doc);
ExperimentPlan load_plan(const std::filesystem::path& file);
// One-cell plan for `verify <suite>` with optional mesh and seed overrides.
ExperimentPlan single_suite_plan(const std::string& suite, int mesh, long seed);

nlohmann::json config_to_json(const SuiteConfig& c);
nlohmann::json bands_to_json(const Bands& b);
nlohmann::json result_to_json(const SuiteResult& r);

// sha1("blob <size>\0" + text), hex.
std::string git_blob_hash(const std::string& text);

// Worker count from DSHELL_WORKERS (default 1, clamped to [1, 64]).
int worker_count();

struct RunSummary {
  bool pass = true;
  std::vector<SuiteResult> results;
};

// Runs every cell on the worker pool and writes, under out:
//   <label>.csv per cell, summary.json, plot.py.
// log receives progress lines (serialized).
RunSummary run_plan(const ExperimentPlan& plan, const std::filesystem::path& out,
                    const std::function<void(const std::string&)>& log);

// Writes a table as CSV with a fixed numeric format (byte-stable for equal inputs).
void write_csv(const DataTable& t, const std::filesystem::path& file);

// Text report of summary.json in dir; returns false when any check failed.
bool print_report(const std::filesystem::path& dir, std::ostream& os);

}  // namespace dshell::cli
