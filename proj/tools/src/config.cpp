#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "jatecs/error.hpp"
#include "jatecs/text_format.hpp"
#include "jatecs_cli/cli.hpp"

namespace jatecs::cli {

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto view = trim(chomp_cr(line));
    if (view.empty() || view.front() == '#') continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos || trim(view.substr(0, eq)).empty())
      throw UsageError(path.string() + ":" + std::to_string(number) + ": expected key=value");
    auto key = std::string(trim(view.substr(0, eq)));
    if (key.starts_with("-")) throw UsageError(path.string() + ":" + std::to_string(number) + ": key must not start with '-'");
    entries.emplace_back(std::move(key), std::string(trim(view.substr(eq + 1))));
  }
  return entries;
}

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> rest;
  std::vector<std::string> fromFile;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file argument");
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(std::move(args[i]));
      continue;
    }
    for (auto& [key, value] : read_config_file(path)) {
      fromFile.push_back("--" + key);
      fromFile.push_back(value);
    }
  }
  if (fromFile.empty()) return rest;
  const auto insertAt = rest.empty() ? rest.begin() : rest.begin() + 1;
  rest.insert(insertAt, fromFile.begin(), fromFile.end());
  return rest;
}

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::Index: return "index";
    case Stage::Tsr: return "tsr";
    case Stage::Project: return "project";
    case Stage::Weight: return "weight";
    case Stage::Train: return "train";
    case Stage::Classify: return "classify";
    case Stage::Eval: return "eval";
    case Stage::Quantify: return "quantify";
  }
  throw InvariantError("unhandled stage");
}

std::vector<Stage> parse_stages(const std::string& list) {
  static const std::vector<Stage> all{Stage::Index, Stage::Tsr,      Stage::Project, Stage::Weight,
                                      Stage::Train, Stage::Classify, Stage::Eval,    Stage::Quantify};
  std::vector<Stage> stages;
  for (auto token : split(list, ',')) {
    token = trim(token);
    auto it = std::find_if(all.begin(), all.end(), [&](Stage s) { return stage_name(s) == token; });
    if (it == all.end()) throw UsageError("unknown pipeline stage '" + std::string(token) + "'");
    if (std::find(stages.begin(), stages.end(), *it) != stages.end())
      throw UsageError("pipeline stage '" + std::string(token) + "' listed twice");
    stages.push_back(*it);
  }
  if (stages.empty() || stages.front() != Stage::Index) throw UsageError("the pipeline must start with the index stage");

  // Rank in the canonical chain; quantify only has to follow the
  // representation stages.
  auto rank = [](Stage s) { return static_cast<int>(s); };
  Stage previous = Stage::Index;
  for (std::size_t i = 1; i < stages.size(); ++i) {
    const Stage s = stages[i];
    if (s == Stage::Quantify) continue;
    if (rank(s) <= rank(previous))
      throw UsageError("pipeline stage '" + stage_name(s) + "' cannot come after '" + stage_name(previous) + "'");
    previous = s;
  }
  auto has = [&](Stage s) { return std::find(stages.begin(), stages.end(), s) != stages.end(); };
  auto position = [&](Stage s) { return std::find(stages.begin(), stages.end(), s) - stages.begin(); };
  if (has(Stage::Quantify)) {
    for (Stage before : {Stage::Tsr, Stage::Project, Stage::Weight})
      if (has(before) && position(before) > position(Stage::Quantify))
        throw UsageError("pipeline stage 'quantify' must come after '" + stage_name(before) + "'");
  }
  if (has(Stage::Classify) && !has(Stage::Train)) throw UsageError("pipeline stage 'classify' needs 'train'");
  if (has(Stage::Eval) && !has(Stage::Classify)) throw UsageError("pipeline stage 'eval' needs 'classify'");
  return stages;
}

unsigned resolve_threads(unsigned flag) {
  if (const char* env = std::getenv("JATECS_THREADS"); env && *env) {
    auto value = parse_uint(env);
    if (!value || *value > 4096) throw UsageError("JATECS_THREADS must be an integer between 0 and 4096");
    return static_cast<unsigned>(*value);
  }
  return flag;
}

}  // namespace jatecs::cli
