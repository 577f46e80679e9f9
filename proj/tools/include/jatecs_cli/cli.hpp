#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace jatecs::cli {

// Runs one CLI invocation. `args` excludes the program name. Returns the
// process exit code: 0 success, 1 usage or configuration error, 2 data or
// parse error, 3 internal invariant violation.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// `key=value` lines; blank lines and lines starting with '#' are skipped.
// Throws UsageError on a malformed line or an unreadable file.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

// Replaces `--config FILE` / `--config=FILE` by the file's entries as
// `--key value` pairs placed right after the subcommand, so flags given on
// the command line come later and win.
std::vector<std::string> expand_config(std::vector<std::string> args);

enum class Stage { Index, Tsr, Project, Weight, Train, Classify, Eval, Quantify };

// Comma-separated stage names in canonical order
// index < tsr < project < weight < train < classify < eval, with quantify
// anywhere after weight (or index when weighting is skipped). The list
// must start with index; classify needs train and eval needs classify.
// Violations throw UsageError.
std::vector<Stage> parse_stages(const std::string& list);
std::string stage_name(Stage stage);

// Thread count from JATECS_THREADS when set, else `flag` (0 = all cores).
unsigned resolve_threads(unsigned flag);

}  // namespace jatecs::cli
