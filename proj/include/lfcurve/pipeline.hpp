#ifndef LFCURVE_PIPELINE_HPP
#define LFCURVE_PIPELINE_HPP

// Executes a RunConfig task by task. Every task appends one section to
// report.txt and one line to results.jsonl in the output directory, plus any
// curve CSVs, model files and SVG charts it produces, named after the task id.
// A failing task is reported with its id and the remaining tasks still run;
// tasks that depend on a failed fit fail in turn.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lfcurve/run_config.hpp"

namespace lfcurve {

struct RunSummary {
  int tasks_run = 0;
  int tasks_failed = 0;
  std::string report;  // contents of report.txt

  [[nodiscard]] int exit_status() const noexcept { return tasks_failed == 0 ? 0 : 1; }
};

RunSummary run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace lfcurve

#endif  // LFCURVE_PIPELINE_HPP
