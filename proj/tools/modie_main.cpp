// modie: protein modification statistics, views and structure colourings.

#include <iostream>

#include <CLI11.hpp>

#include "modie/cli.hpp"

namespace {

void add_input_flags(CLI::App* cmd, modie::RunConfig& config) {
  cmd->add_option("--table", config.table, "Modification table (CSV, or TSV by .tsv/.tab extension)")->required();
  cmd->add_option("--fasta", config.fasta, "Protein sequences (FASTA)")->required();
  cmd->add_option("--out", config.output_dir, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modie: protein modification statistics, 2D views and 3D hot-spot colourings"};
  app.require_subcommand(1);

  modie::RunConfig config;
  std::string window;
  std::string row_key = "type";
  std::string order = "greedy";
  std::string view = "all";
  std::string config_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_flag("--stdout", config.to_stdout, "Also write data documents to stdout");
    cmd->add_flag("--exclude-mutations", config.exclude_mutations, "Leave mutation records out of residue counts");
  };

  auto* stats = app.add_subcommand("stats", "Write per-accession statistics JSON");
  add_input_flags(stats, config);
  add_common(stats);
  stats->add_option("--row-key", row_key, "Matrix rows for repeated-pattern detection")
      ->check(CLI::IsMember({"classification", "type"}))
      ->capture_default_str();

  auto* render = app.add_subcommand("render", "Write SVG views and the scene JSON");
  add_input_flags(render, config);
  add_common(render);
  render->add_option("--view", view, "Views to draw")->check(CLI::IsMember({"dist", "class", "type", "all"}))->capture_default_str();
  render->add_option("--window", window, "Focus window A:B (1-based, inclusive)");
  render->add_option("--order", order, "Row order of the band views")->check(CLI::IsMember({"greedy", "none"}))->capture_default_str();

  auto* color3d = app.add_subcommand("color3d", "Fetch structures from the manifest and write hot-spot colourings");
  add_input_flags(color3d, config);
  add_common(color3d);
  color3d->add_option("--manifest", config.manifest, "Manifest JSON")->required();
  color3d->add_option("--cache", config.cache_dir, "Structure cache directory (default $MODIE_CACHE or .modie-cache)");

  auto* serve = app.add_subcommand("serve", "Serve generated outputs and the UI bundle over HTTP");
  serve->add_option("--out", config.output_dir, "Directory with generated outputs")->capture_default_str();
  serve->add_option("--ui", config.ui_dir, "Built UI bundle directory");
  serve->add_option("--port", config.port, "TCP port")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? modie::kExitOk : modie::kExitUsage;
  }

  try {
    if (!config_path.empty()) modie::load_config_file(config_path, config);
    if (!window.empty()) config.window = modie::parse_window(window);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: cannot read config '" << config_path << "'\n";
    return modie::kExitIo;
  } catch (const modie::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return modie::kExitUsage;
  }
  config.row_key = row_key == "classification" ? modie::RowKey::Classification : modie::RowKey::ModType;
  config.seriate = order == "greedy";
  if (view == "dist") config.view = modie::ViewSelection::Distribution;
  if (view == "class") config.view = modie::ViewSelection::Classification;
  if (view == "type") config.view = modie::ViewSelection::Types;

  if (*stats) return modie::cmd_stats(config, std::cout, std::cerr);
  if (*render) return modie::cmd_render(config, std::cout, std::cerr);
  if (*color3d) {
    auto transport = modie::make_http_transport();
    return modie::cmd_color3d(config, *transport, std::cout, std::cerr);
  }
  return modie::cmd_serve(config, std::cerr);
}
