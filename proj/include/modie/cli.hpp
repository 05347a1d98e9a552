#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "modie/analytics.hpp"
#include "modie/fetch.hpp"
#include "modie/ingest.hpp"
#include "modie/layout.hpp"

namespace modie {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitValidation = 3,
  kExitFetch = 4,
  kExitPortBusy = 5,
};

enum class ViewSelection { Distribution, Classification, Types, All };

struct RunConfig {
  std::filesystem::path table;
  std::filesystem::path fasta;
  std::filesystem::path manifest;
  std::filesystem::path cache_dir;
  std::filesystem::path output_dir = ".";
  std::filesystem::path ui_dir;
  ViewSelection view = ViewSelection::All;
  std::optional<Window> window;
  RowKey row_key = RowKey::ModType;  ///< matrix used for repeated-pattern detection
  bool seriate = true;
  bool exclude_mutations = false;  ///< drop mutation records from residue tallies
  bool to_stdout = false;
  int port = 8080;
  LayoutConfig layout;
  PaletteConfig palette;
  FetchOptions fetch;
};

/// Apply a JSON config file (geometry, palette overrides, opacity, max_stack,
/// hotspot colours, fetch templates) on top of `config`.
void load_config_file(const std::filesystem::path& path, RunConfig& config);
void apply_config_json(std::string_view json_text, RunConfig& config);

/// `A:B` with 1 <= A <= B.
Window parse_window(std::string_view text);

/// Cache directory: explicit flag, else $MODIE_CACHE, else ".modie-cache".
std::filesystem::path resolve_cache_dir(const std::filesystem::path& flag_value);

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_color3d(const RunConfig& config, Transport& transport, std::ostream& out, std::ostream& err);
/// Blocks serving `output_dir` (and `ui_dir` when set) until the process stops.
int cmd_serve(const RunConfig& config, std::ostream& err);

}  // namespace modie
