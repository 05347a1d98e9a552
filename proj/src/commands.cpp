#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "modie/cli.hpp"
#include "modie/ordering.hpp"
#include "modie/render.hpp"
#include "modie/server.hpp"

namespace modie {

namespace {

using nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  if (path.empty()) throw IoError("no " + std::string(what) + " file given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + std::string(what) + " file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto temp = path.parent_path() / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("cannot write '" + temp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) throw IoError("cannot write '" + path.string() + "': " + ec.message());
}

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "'");
}

bool safe_file_stem(const std::string& accession) {
  return !accession.empty() && accession.find("..") == std::string::npos &&
         std::all_of(accession.begin(), accession.end(), [](char c) {
           return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
         });
}

Dialect dialect_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".tsv" || ext == ".tab" || ext == ".txt" ? Dialect::Tab : Dialect::Comma;
}

struct AccessionData {
  std::string accession;
  const ProteinEntry* protein = nullptr;
  std::vector<ModificationRecord> records;  ///< positions within 1..L
  std::vector<ModificationRecord> out_of_range;
  std::vector<ResidueMismatch> mismatches;
};

struct Inputs {
  ModificationTable table;
  std::vector<ProteinEntry> proteins;
  std::vector<AccessionData> accessions;
  std::vector<std::string> classifications;  ///< sorted, whole table
  std::vector<std::string> mod_types;        ///< sorted, whole table
  bool failed = false;                       ///< any validation failure
};

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  const std::string table_text = read_file(config.table, "modification table");
  const std::string fasta_text = read_file(config.fasta, "FASTA");
  in.table = parse_modification_table(table_text, dialect_for(config.table));
  in.proteins = parse_fasta(fasta_text);
  in.failed = !in.table.report.rejections.empty();

  std::set<std::string> classes, types;
  for (const auto& r : in.table.records) {
    classes.insert(r.classification);
    types.insert(r.mod_type);
    auto it = std::find_if(in.accessions.begin(), in.accessions.end(),
                           [&](const AccessionData& a) { return a.accession == r.accession; });
    if (it == in.accessions.end()) {
      AccessionData data;
      data.accession = r.accession;
      for (const auto& p : in.proteins)
        if (p.accession == r.accession) {
          data.protein = &p;
          break;
        }
      it = in.accessions.insert(in.accessions.end(), std::move(data));
    }
    if (it->protein && r.position > it->protein->length())
      it->out_of_range.push_back(r);
    else
      it->records.push_back(r);
  }
  in.classifications.assign(classes.begin(), classes.end());
  in.mod_types.assign(types.begin(), types.end());

  for (auto& a : in.accessions) {
    if (!a.protein || !a.out_of_range.empty() || !safe_file_stem(a.accession)) in.failed = true;
    if (a.protein) a.mismatches = check_against_sequence(*a.protein, a.records);
  }
  return in;
}

json report_json(const Inputs& in) {
  json j = json::object();
  json rejected = json::array();
  for (const auto& r : in.table.report.rejections)
    rejected.push_back({{"line", r.line}, {"code", to_string(r.code)}, {"field", r.field}, {"message", r.message}});
  j["rejected_rows"] = std::move(rejected);
  j["warnings"] = in.table.report.warnings;
  json accessions = json::object();
  for (const auto& a : in.accessions) {
    json item = json::object();
    item["has_sequence"] = a.protein != nullptr;
    item["valid_name"] = safe_file_stem(a.accession);
    json mism = json::array();
    for (const auto& m : a.mismatches)
      mism.push_back({{"position", m.position},
                      {"expected", std::string(1, m.expected)},
                      {"observed", std::string(1, m.observed)}});
    item["residue_mismatches"] = std::move(mism);
    json out = json::array();
    for (const auto& r : a.out_of_range) out.push_back({{"position", r.position}, {"mod_type", r.mod_type}});
    item["out_of_range"] = std::move(out);
    accessions[a.accession] = std::move(item);
  }
  j["accessions"] = std::move(accessions);
  j["failed"] = in.failed;
  return j;
}

void write_report(const RunConfig& config, const Inputs& in, std::ostream& err) {
  write_atomic(config.output_dir / "validation_report.json", report_json(in).dump(1) + "\n");
  for (const auto& r : in.table.report.rejections) err << "rejected line " << r.line << ": " << r.message << "\n";
  for (const auto& w : in.table.report.warnings) err << "warning: " << w << "\n";
  for (const auto& a : in.accessions) {
    if (!a.protein) err << a.accession << ": no sequence in FASTA input\n";
    if (!a.out_of_range.empty())
      err << a.accession << ": " << a.out_of_range.size() << " record(s) beyond the sequence end\n";
    if (!a.mismatches.empty())
      err << a.accession << ": " << a.mismatches.size() << " residue mismatch(es) against the sequence\n";
    if (!safe_file_stem(a.accession)) err << a.accession << ": accession cannot be used as a file name\n";
  }
}

bool usable(const AccessionData& a) { return a.protein && safe_file_stem(a.accession); }

json distribution_json(const Distribution& d) {
  json out = json::array();
  for (const auto& [name, count] : d) out.push_back({{"name", name}, {"count", count}});
  return out;
}

json stats_json(const RunConfig& config, const AccessionData& a) {
  const auto counted = config.exclude_mutations ? without_mutations(a.records) : a.records;
  const std::int64_t length = a.protein->length();
  const ResidueStats stats = residue_counts(counted, length);
  const auto bins = bin_hotspots(stats);

  json j = json::object();
  j["accession"] = a.accession;
  j["name"] = a.protein->name;
  j["species"] = a.protein->species;
  j["L"] = length;
  j["mutations_in_counts"] = !config.exclude_mutations;
  j["total"] = stats.total;
  j["max_position"] = stats.max_position;
  j["max_count"] = stats.max_count;
  j["max_residue"] = stats.max_position > 0
                         ? std::string(1, a.protein->sequence[static_cast<std::size_t>(stats.max_position - 1)])
                         : std::string();
  j["counts"] = std::vector<std::int64_t>(stats.counts.begin(), stats.counts.end());
  j["hotspots"] = {{"none", std::count(bins.begin(), bins.end(), HotspotBin::None)},
                   {"low", std::count(bins.begin(), bins.end(), HotspotBin::Low)},
                   {"high", std::count(bins.begin(), bins.end(), HotspotBin::High)}};
  j["classification_distribution"] = distribution_json(classification_distribution(a.records));
  j["mod_type_distribution"] = distribution_json(mod_type_distribution(a.records));
  j["residue_letter_distribution"] = distribution_json(residue_letter_distribution(a.records));

  json sites = json::array();
  for (const auto& s : mutation_sites(a.records)) sites.push_back({{"position", s.position}, {"residue", std::string(1, s.residue)}});
  j["mutation_sites"] = std::move(sites);

  const OccupancyMatrix matrix = occupancy_matrix(a.records, config.row_key, length);
  json groups = json::array();
  for (const auto& g : find_repeated_patterns(matrix)) {
    json signature = json::object();
    for (Eigen::Index r = 0; r < g.signature.size(); ++r)
      if (g.signature(r) != 0) signature[matrix.row_labels()[static_cast<std::size_t>(r)]] = g.signature(r);
    // classification make-up of the records at the first position
    std::vector<ModificationRecord> at_first;
    for (const auto& r : a.records)
      if (r.position == g.positions.front()) at_first.push_back(r);
    groups.push_back({{"positions", g.positions},
                      {"signature", std::move(signature)},
                      {"classification_composition", distribution_json(classification_distribution(at_first))}});
  }
  j["patterns"] = {{"row_key", config.row_key == RowKey::Classification ? "classification" : "type"},
                   {"groups", std::move(groups)}};
  return j;
}

SceneDocument build_document(const RunConfig& config, const Inputs& in, const AccessionData& a) {
  const std::int64_t length = a.protein->length();
  const Window window = config.window ? *config.window : Window{1, length};
  if (window.start > length)
    throw LayoutError(LayoutErrorCode::WindowOutOfRange, a.accession + ": window starts beyond the sequence end (L=" +
                                                             std::to_string(length) + ")");
  SceneDocument doc;
  doc.accession = a.accession;
  doc.length = length;
  doc.window = clamp_window(window, length);
  doc.classification_palette = assign_palette(in.classifications, config.palette);
  doc.type_palette = assign_palette(in.mod_types, config.palette);

  const ResidueStats stats = residue_counts(a.records, length);
  const OccupancyMatrix by_class = occupancy_matrix(a.records, RowKey::Classification, length);
  const OccupancyMatrix by_type = occupancy_matrix(a.records, RowKey::ModType, length);
  auto order_of = [&](const OccupancyMatrix& m) {
    return config.seriate && m.rows() > 0 ? seriate_rows(m) : identity_order(static_cast<std::size_t>(m.rows()));
  };
  const auto class_order = order_of(by_class);
  const auto type_order = order_of(by_type);

  doc.distribution = layout_distribution_view(a.records, stats, doc.window, doc.classification_palette, config.layout);
  doc.classification =
      layout_classification_view(by_class, class_order, a.records, doc.window, doc.classification_palette, config.layout);
  doc.types = layout_type_view(by_type, type_order, a.records, doc.window, doc.type_palette, config.layout);
  doc.context = layout_context_bar(stats.counts, doc.window, config.layout);
  doc.classification_order = doc.classification.rows;
  doc.type_order = doc.types.rows;
  return doc;
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const TableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const FastaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ManifestError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ensure_output_dir(config.output_dir);
    const Inputs in = load_inputs(config);
    write_report(config, in, err);
    json all = json::array();
    for (const auto& a : in.accessions) {
      if (!usable(a)) continue;
      json doc = stats_json(config, a);
      write_atomic(config.output_dir / (a.accession + ".stats.json"), doc.dump(1) + "\n");
      all.push_back(std::move(doc));
    }
    if (config.to_stdout) out << all.dump(1) << "\n";
    return static_cast<int>(in.failed ? kExitValidation : kExitOk);
  });
}

int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ensure_output_dir(config.output_dir);
    const Inputs in = load_inputs(config);
    write_report(config, in, err);
    bool failed = in.failed;
    const bool all = config.view == ViewSelection::All;
    for (const auto& a : in.accessions) {
      if (!usable(a)) continue;
      SceneDocument doc;
      try {
        doc = build_document(config, in, a);
      } catch (const LayoutError& e) {
        err << "error: " << e.what() << "\n";
        failed = true;
        continue;
      }
      const auto stem = config.output_dir / a.accession;
      if (all || config.view == ViewSelection::Distribution)
        write_atomic(stem.string() + ".distribution.svg", emit_svg(doc.distribution));
      if (all || config.view == ViewSelection::Classification)
        write_atomic(stem.string() + ".classification.svg", emit_svg(doc.classification));
      if (all || config.view == ViewSelection::Types) write_atomic(stem.string() + ".types.svg", emit_svg(doc.types));
      write_atomic(stem.string() + ".context.svg", emit_svg(doc.context));
      const std::string scene = emit_scene_json(doc);
      write_atomic(stem.string() + ".scene.json", scene);
      if (config.to_stdout) out << scene;
      for (const auto& w : doc.classification_palette.warnings) err << "warning: " << w << "\n";
    }
    return static_cast<int>(failed ? kExitValidation : kExitOk);
  });
}

int cmd_color3d(const RunConfig& config, Transport& transport, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ensure_output_dir(config.output_dir);
    const Manifest manifest = parse_manifest(read_file(config.manifest, "manifest"));
    const Inputs in = load_inputs(config);
    write_report(config, in, err);
    const std::filesystem::path cache = resolve_cache_dir(config.cache_dir);
    const Palette palette = assign_palette({}, config.palette);

    bool fetch_failed = false;
    bool failed = in.failed;
    std::vector<std::array<std::string, 5>> summary;
    for (const auto& entry : manifest.entries) {
      auto it = std::find_if(in.accessions.begin(), in.accessions.end(),
                             [&](const AccessionData& a) { return a.accession == entry.accession; });
      const ProteinEntry* protein = it != in.accessions.end() ? it->protein : nullptr;
      if (!protein) {
        for (const auto& p : in.proteins)
          if (p.accession == entry.accession) protein = &p;
      }
      if (!protein || !safe_file_stem(entry.accession)) {
        err << entry.accession << ": no sequence available, skipped\n";
        failed = true;
        continue;
      }
      const std::vector<ModificationRecord> none;
      const auto& records = it != in.accessions.end() ? it->records : none;

      std::vector<StructureModel> candidates;
      for (const auto& id : entry.structure_ids) {
        const SourceKind kind = kind_for_structure_id(id);
        try {
          const auto path = fetch_structure(id, kind, cache, transport, config.fetch);
          StructureModel model = parse_pdb(read_file(path, "structure"), kind);
          model.source_id = id;
          candidates.push_back(std::move(model));
        } catch (const FetchError& e) {
          err << entry.accession << ": " << e.what() << "\n";
          fetch_failed = true;
        } catch (const PdbError& e) {
          err << entry.accession << ": " << id << ": " << e.what() << "\n";
          failed = true;
        }
      }
      if (candidates.empty()) {
        err << entry.accession << ": no usable structure\n";
        continue;
      }

      const StructureModel& best = select_best_model(candidates);
      const auto chain = choose_chain(best, entry.accession, entry.preferred_chain);
      if (!chain) {
        err << entry.accession << ": preferred chain not found in " << best.source_id << "\n";
        failed = true;
        continue;
      }
      const auto counted = config.exclude_mutations ? without_mutations(records) : records;
      const auto bins = bin_hotspots(residue_counts(counted, protein->length()));
      const StructureColoring coloring = emit_structure_coloring(best, *chain, bins, palette, entry.accession);
      const std::string text = coloring_to_json(coloring);
      write_atomic(config.output_dir / (entry.accession + ".coloring.json"), text);
      write_atomic(config.output_dir / (entry.accession + ".coloring.js"), coloring_viewer_script(coloring));
      if (config.to_stdout) out << text;

      std::ostringstream resolution;
      if (best.resolution)
        resolution << std::fixed << std::setprecision(2) << *best.resolution;
      else
        resolution << "-";
      summary.push_back({entry.accession, best.source_id, std::string(to_string(best.source_kind)), resolution.str(),
                         std::string(1, *chain)});
    }

    err << std::left << std::setw(12) << "accession" << std::setw(14) << "source_id" << std::setw(11) << "kind"
        << std::setw(12) << "resolution" << "chain\n";
    for (const auto& row : summary)
      err << std::left << std::setw(12) << row[0] << std::setw(14) << row[1] << std::setw(11) << row[2]
          << std::setw(12) << row[3] << row[4] << "\n";
    if (fetch_failed) return static_cast<int>(kExitFetch);
    return static_cast<int>(failed ? kExitValidation : kExitOk);
  });
}

int cmd_serve(const RunConfig& config, std::ostream& err) {
  SceneServer server(config.output_dir, config.ui_dir);
  if (!server.bind("127.0.0.1", config.port)) {
    err << "error: cannot listen on port " << config.port << " (port busy)\n";
    return kExitPortBusy;
  }
  err << "serving " << config.output_dir.string() << " on http://127.0.0.1:" << server.port() << "/\n";
  server.listen();
  return kExitOk;
}

}  // namespace modie
