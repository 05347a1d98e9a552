#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modie/ingest.hpp"
#include "modie/model.hpp"

namespace modie::test {

inline std::filesystem::path data_dir() { return MODIE_TEST_DATA_DIR; }

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

/// The 10-residue synthetic protein and its 12 records.
inline ProteinEntry synthetic_protein() { return parse_fasta(read_text(data_dir() / "synthetic.fasta")).at(0); }

inline std::vector<ModificationRecord> synthetic_records() {
  return parse_modification_table(read_text(data_dir() / "synthetic.csv")).records;
}

inline ModificationRecord make_record(std::int64_t position, std::string classification, std::string mod_type = "Oxidation",
                                      bool mutation = false, char residue = 'C') {
  return {"P00000", position, residue, std::move(mod_type), std::move(classification), mutation};
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("modie_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Random records over `length` positions with a few labels.
inline std::vector<ModificationRecord> random_records(std::mt19937& rng, std::int64_t length, std::size_t count) {
  static const char* kClasses[] = {"Artefact", "Chemical derivative", "Multiple", "Post-translational", "Glycosylation"};
  static const char* kTypes[] = {"Oxidation", "Carbamidomethyl", "Phosphorylation", "Acetylation", "Deamidation",
                                 "Methylation"};
  std::uniform_int_distribution<std::int64_t> pos(1, length);
  std::uniform_int_distribution<int> cls(0, 4), typ(0, 5), mut(0, 9);
  std::vector<ModificationRecord> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back({"P00000", pos(rng), 'C', kTypes[typ(rng)], kClasses[cls(rng)], mut(rng) == 0});
  return out;
}

}  // namespace modie::test
