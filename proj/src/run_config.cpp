#include "lfcurve/run_config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace lfcurve {

namespace {

constexpr std::array<std::string_view, 6> kTaskKinds{"fit_univariate", "fit_generalized", "unitroot",
                                                     "cointegration",  "forecast_eval",   "figure"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

int parse_int(std::string_view text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("invalid integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

const char* to_string(SourceRole role) {
  switch (role) {
    case SourceRole::labour_force: return "labour_force";
    case SourceRole::unemployment: return "unemployment";
    case SourceRole::dgdp: return "dgdp";
    case SourceRole::cpi: return "cpi";
  }
  return "?";
}

SourceRole parse_source_role(std::string_view text) {
  if (text == "labour_force") return SourceRole::labour_force;
  if (text == "unemployment") return SourceRole::unemployment;
  if (text == "dgdp") return SourceRole::dgdp;
  if (text == "cpi") return SourceRole::cpi;
  throw InvalidArgument("unknown source role '" + std::string(text) + "' (expected labour_force|unemployment|dgdp|cpi)");
}

bool is_known_task_kind(std::string_view kind) {
  for (auto k : kTaskKinds) {
    if (k == kind) return true;
  }
  return false;
}

std::pair<int, int> parse_int_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(text);
    return {v, v};
  }
  return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
}

std::optional<std::string> TaskBlock::get(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string TaskBlock::get_or(std::string_view key, std::string_view fallback) const {
  auto v = get(key);
  return v ? *v : std::string(fallback);
}

std::string TaskBlock::require(std::string_view key) const {
  auto v = get(key);
  if (!v) throw InvalidArgument("task '" + id + "' is missing required key '" + std::string(key) + "'");
  return *v;
}

const DataSource* RunConfig::find_source(SourceRole role, Frequency frequency) const {
  for (const auto& s : sources) {
    if (s.role == role && s.frequency == frequency) return &s;
  }
  return nullptr;
}

void RunConfig::validate() const {
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      if (sources[i].role == sources[j].role && sources[i].frequency == sources[j].frequency) {
        const std::string what = std::string("source ") + to_string(sources[i].role) + " (" +
                                 to_string(sources[i].frequency) + ") declared twice";
        if (sources[j].line > 0) throw ParseError(what, sources[j].line);
        throw InvalidArgument(what);
      }
    }
  }
  std::set<std::string> ids;
  for (const auto& t : tasks) {
    if (!is_known_task_kind(t.kind)) throw ParseError("unknown task kind '" + t.kind + "'", t.line);
    if (!ids.insert(t.id).second) throw ParseError("duplicate task id '" + t.id + "'", t.line);
    const Frequency f = parse_frequency(t.get_or("frequency", "annual"));
    for (const char* key : {"driver", "response", "unemployment", "series"}) {
      const auto v = t.get(key);
      if (!v) continue;
      std::istringstream list(*v);
      for (std::string role; std::getline(list, role, ',');) {
        const SourceRole r = parse_source_role(trim(role));
        if (!find_source(r, f)) {
          throw ParseError("task '" + t.id + "' references undeclared source " + trim(role) + " (" + to_string(f) + ")",
                           t.line);
        }
      }
    }
  }
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig config;
  enum class Block { none, source, task } block = Block::none;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> header;
  int header_line = 0;

  const auto close_block = [&](int line_no) {
    if (block == Block::source) {
      DataSource src{{}, parse_source_role(header.at(1)), Frequency::annual, header_line};
      bool has_path = false;
      for (const auto& [k, v] : params) {
        if (k == "path") {
          src.path = std::filesystem::path(v).is_absolute() ? std::filesystem::path(v) : base_dir / v;
          has_path = true;
        } else if (k == "frequency") {
          src.frequency = parse_frequency(v);
        } else {
          throw ParseError("unknown source key '" + k + "'", line_no);
        }
      }
      if (!has_path) throw ParseError("source " + header.at(1) + " has no path", header_line);
      config.sources.push_back(std::move(src));
    } else if (block == Block::task) {
      TaskBlock task{header.at(1), {}, params, header_line};
      task.id = header.size() > 2 ? header[2] : "";
      for (const auto& [k, v] : params) {
        if (k == "id") task.id = v;
      }
      if (task.id.empty()) task.id = task.kind + "_" + std::to_string(config.tasks.size() + 1);
      config.tasks.push_back(std::move(task));
    }
    block = Block::none;
    params.clear();
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    try {
      if (block == Block::none) {
        if (line.back() != '{') throw ParseError("expected 'source <role> {' or 'task <kind> [id] {'", line_no);
        header = split_words(trim(line.substr(0, line.size() - 1)));
        header_line = line_no;
        if (header.size() == 2 && header[0] == "source") {
          block = Block::source;
        } else if ((header.size() == 2 || header.size() == 3) && header[0] == "task") {
          block = Block::task;
        } else {
          throw ParseError("malformed block header", line_no);
        }
        continue;
      }
      if (line == "}") {
        close_block(line_no);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParseError("empty key", line_no);
      params.emplace_back(std::move(key), std::move(value));
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (block != Block::none) throw ParseError("unterminated block opened", header_line);
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

}  // namespace lfcurve
