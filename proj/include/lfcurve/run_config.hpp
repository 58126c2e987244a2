#ifndef LFCURVE_RUN_CONFIG_HPP
#define LFCURVE_RUN_CONFIG_HPP

// Plain-text run configuration:
//
//   # comment
//   source labour_force {
//     path = data/lf.csv
//     frequency = annual
//   }
//   task fit_univariate dgdp_fit {
//     response = dgdp
//     break = 1991
//     lags = 0..5
//   }
//
// Relative source paths resolve against the directory of the config file.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfcurve/series.hpp"

namespace lfcurve {

enum class SourceRole { labour_force, unemployment, dgdp, cpi };

const char* to_string(SourceRole role);
SourceRole parse_source_role(std::string_view text);

struct DataSource {
  std::filesystem::path path;
  SourceRole role;
  Frequency frequency;
  int line = 0;  // header line in the config text, 0 when built in code
};

struct TaskBlock {
  std::string kind;  // fit_univariate | fit_generalized | unitroot | cointegration | forecast_eval | figure
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  int line = 0;

  [[nodiscard]] std::optional<std::string> get(std::string_view key) const;
  [[nodiscard]] std::string get_or(std::string_view key, std::string_view fallback) const;
  [[nodiscard]] std::string require(std::string_view key) const;
};

struct RunConfig {
  std::vector<DataSource> sources;
  std::vector<TaskBlock> tasks;

  [[nodiscard]] const DataSource* find_source(SourceRole role, Frequency frequency) const;
  /// Checks source uniqueness, task kinds, unique ids and source references.
  void validate() const;
};

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// "a..b" or a single integer "a".
std::pair<int, int> parse_int_range(std::string_view text);

bool is_known_task_kind(std::string_view kind);

}  // namespace lfcurve

#endif  // LFCURVE_RUN_CONFIG_HPP
