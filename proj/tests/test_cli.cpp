#include <doctest.h>

#include <sstream>
#include <thread>

#include <json.hpp>

// Eigen must precede httplib: <resolv.h> defines an `_res` macro
#include "fixtures.hpp"
#include "modie/cli.hpp"
#include "modie/render.hpp"
#include "modie/server.hpp"

#include <httplib.h>

using namespace modie;

namespace {

RunConfig synthetic_config(const std::filesystem::path& out) {
  RunConfig config;
  config.table = test::data_dir() / "synthetic.csv";
  config.fasta = test::data_dir() / "synthetic.fasta";
  config.manifest = test::data_dir() / "manifest.json";
  config.output_dir = out;
  return config;
}

class CountingTransport final : public Transport {
 public:
  int calls = 0;
  HttpResponse get(const std::string&) override {
    ++calls;
    return {404, ""};
  }
};

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + needle.size())) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse_window") {
  CHECK(parse_window("290:380") == Window{290, 380});
  CHECK(parse_window("5:5") == Window{5, 5});
  CHECK_THROWS(parse_window("0:5"));
  CHECK_THROWS(parse_window("9:5"));
  CHECK_THROWS(parse_window("abc"));
  CHECK_THROWS(parse_window("3:"));
}

TEST_CASE("config file") {
  RunConfig config;
  apply_config_json(R"({"geometry": {"diameter": 8, "gap": 2}, "max_stack": 20, "opacity": 0.8,
                        "palette": {"Artefact": "#112233"}, "hotspot": {"high": "#FF0000"}})",
                    config);
  CHECK(config.layout.diameter == 8);
  CHECK(config.layout.gap == 2);
  CHECK(config.layout.max_stack == 20u);
  CHECK(config.palette.opacity == doctest::Approx(0.8));
  CHECK(config.palette.overrides.at("Artefact").hex() == "#112233");
  CHECK(config.palette.hotspot_high.hex() == "#FF0000");
  CHECK_THROWS(apply_config_json(R"({"colour": 1})", config));
  CHECK_THROWS(apply_config_json(R"({"opacity": 0})", config));
}

TEST_CASE("cache directory precedence") {
  ::unsetenv("MODIE_CACHE");
  CHECK(resolve_cache_dir("") == ".modie-cache");
  ::setenv("MODIE_CACHE", "/tmp/env-cache", 1);
  CHECK(resolve_cache_dir("") == "/tmp/env-cache");
  CHECK(resolve_cache_dir("/tmp/flag") == "/tmp/flag");
  ::unsetenv("MODIE_CACHE");
}

TEST_CASE("stats writes per-accession JSON") {
  test::TempDir dir;
  std::ostringstream out, err;
  auto config = synthetic_config(dir.path());
  REQUIRE(cmd_stats(config, out, err) == kExitOk);
  CHECK(out.str().empty());
  const auto j = nlohmann::json::parse(test::read_text(dir.path() / "TEST1.stats.json"));
  CHECK(j.at("total") == 12);
  CHECK(j.at("max_position") == 2);
  CHECK(j.at("max_count") == 3);
  CHECK(j.at("max_residue") == "C");
  CHECK(j.at("residue_letter_distribution")[0].at("name") == "C");
  CHECK(j.at("mutation_sites").size() == 2);
  CHECK(j.at("classification_distribution")[0].at("name") == "Post-translational");
  CHECK(std::filesystem::exists(dir.path() / "validation_report.json"));

  config.exclude_mutations = true;
  config.to_stdout = true;
  std::ostringstream out2;
  REQUIRE(cmd_stats(config, out2, err) == kExitOk);
  CHECK(nlohmann::json::parse(out2.str())[0].at("total") == 10);
}

TEST_CASE("missing input exits 2 and names the path") {
  test::TempDir dir;
  auto config = synthetic_config(dir.path());
  config.table = dir.path() / "absent.csv";
  std::ostringstream out, err;
  CHECK(cmd_stats(config, out, err) == kExitIo);
  CHECK(err.str().find("absent.csv") != std::string::npos);
}

TEST_CASE("validation failures exit 3 with a report") {
  test::TempDir dir;
  test::write_text(dir.path() / "bad.csv",
                   "accession,position,residue,mod_type,classification,is_mutation\n"
                   "TEST1,2,C,Oxidation,Chemical derivative,false\n"
                   "TEST1,zz,C,Oxidation,Chemical derivative,false\n"
                   "TEST1,40,C,Oxidation,Chemical derivative,false\n");
  auto config = synthetic_config(dir.path());
  config.table = dir.path() / "bad.csv";
  std::ostringstream out, err;
  CHECK(cmd_stats(config, out, err) == kExitValidation);
  const auto report = nlohmann::json::parse(test::read_text(dir.path() / "validation_report.json"));
  CHECK(report.at("rejected_rows").size() == 1);
  CHECK(report.at("rejected_rows")[0].at("line") == 3);
  CHECK(report.at("accessions").at("TEST1").at("out_of_range").size() == 1);
  CHECK(report.at("failed") == true);
  // the valid record still produced statistics
  CHECK(nlohmann::json::parse(test::read_text(dir.path() / "TEST1.stats.json")).at("total") == 1);
}

TEST_CASE("render writes three views and a scene document, byte for byte repeatable") {
  test::TempDir a, b;
  std::ostringstream out, err;
  REQUIRE(cmd_render(synthetic_config(a.path()), out, err) == kExitOk);
  REQUIRE(cmd_render(synthetic_config(b.path()), out, err) == kExitOk);
  for (const char* name : {"TEST1.distribution.svg", "TEST1.classification.svg", "TEST1.types.svg",
                           "TEST1.context.svg", "TEST1.scene.json"}) {
    CAPTURE(name);
    REQUIRE(std::filesystem::exists(a.path() / name));
    CHECK(test::read_text(a.path() / name) == test::read_text(b.path() / name));
  }
  const auto doc = parse_scene_json(test::read_text(a.path() / "TEST1.scene.json"));
  CHECK(doc.classification.count(GlyphKind::Circle) == 12);
  CHECK(occurrences(test::read_text(a.path() / "TEST1.classification.svg"), "class=\"cross\"") == 2);

  // repeat into the same directory: identical bytes
  const auto before = test::read_text(a.path() / "TEST1.scene.json");
  REQUIRE(cmd_render(synthetic_config(a.path()), out, err) == kExitOk);
  CHECK(test::read_text(a.path() / "TEST1.scene.json") == before);
}

TEST_CASE("render honours --window, --view and --order") {
  test::TempDir dir;
  auto config = synthetic_config(dir.path());
  config.window = Window{3, 6};
  config.view = ViewSelection::Classification;
  config.seriate = false;
  std::ostringstream out, err;
  REQUIRE(cmd_render(config, out, err) == kExitOk);
  CHECK(std::filesystem::exists(dir.path() / "TEST1.classification.svg"));
  CHECK_FALSE(std::filesystem::exists(dir.path() / "TEST1.types.svg"));
  const auto svg = test::read_text(dir.path() / "TEST1.classification.svg");
  CHECK(occurrences(svg, "<circle") == 6);
  CHECK(occurrences(svg, "class=\"cross\"") == 1);
  const auto doc = parse_scene_json(test::read_text(dir.path() / "TEST1.scene.json"));
  CHECK(doc.window == Window{3, 6});
  // first-appearance order
  CHECK(doc.classification_order ==
        std::vector<std::string>{"Chemical derivative", "Artefact", "Multiple", "Post-translational"});

  config.window = Window{20, 30};
  CHECK(cmd_render(config, out, err) == kExitValidation);
  config.window = Window{8, 30};  // clamped to 8:10
  CHECK(cmd_render(config, out, err) == kExitOk);
}

TEST_CASE("color3d uses the cache and picks the best model") {
  test::TempDir dir;
  const auto cache = dir.path() / "cache";
  test::write_text(cache / "xray" / "9ZZZ.pdb", test::read_text(test::data_dir() / "9zzz.pdb"));
  test::write_text(cache / "xray" / "9ZZY.pdb", test::read_text(test::data_dir() / "9zzy.pdb"));
  test::write_text(cache / "predicted" / "TEST1.pdb", test::read_text(test::data_dir() / "af_p04075.pdb"));
  auto config = synthetic_config(dir.path() / "out");
  config.cache_dir = cache;
  CountingTransport transport;
  std::ostringstream out, err;
  REQUIRE(cmd_color3d(config, transport, out, err) == kExitOk);
  CHECK(transport.calls == 0);
  const auto j = nlohmann::json::parse(test::read_text(dir.path() / "out" / "TEST1.coloring.json"));
  CHECK(j.at("source_id") == "9ZZZ");
  CHECK(j.at("entries").size() == 20);
  CHECK(std::filesystem::exists(dir.path() / "out" / "TEST1.coloring.js"));
  CHECK(err.str().find("9ZZZ") != std::string::npos);
  CHECK(err.str().find("1.90") != std::string::npos);
}

TEST_CASE("color3d reports fetch failures with exit 4") {
  test::TempDir dir;
  auto config = synthetic_config(dir.path() / "out");
  config.cache_dir = dir.path() / "cache";
  CountingTransport transport;
  std::ostringstream out, err;
  CHECK(cmd_color3d(config, transport, out, err) == kExitFetch);
  CHECK(transport.calls == 3);
  CHECK(err.str().find("9ZZZ") != std::string::npos);
}

TEST_CASE("scene server") {
  test::TempDir dir;
  std::ostringstream out, err;
  REQUIRE(cmd_render(synthetic_config(dir.path()), out, err) == kExitOk);

  SceneServer server(dir.path());
  REQUIRE(server.bind("127.0.0.1", 0));
  std::thread thread([&] { server.listen(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", server.port());
  auto list = client.Get("/api/scenes");
  REQUIRE(list);
  CHECK(list->status == 200);
  CHECK(nlohmann::json::parse(list->body) == nlohmann::json::array({"TEST1"}));

  auto scene = client.Get("/api/scenes/TEST1");
  REQUIRE(scene);
  CHECK(scene->status == 200);
  CHECK(scene->body == test::read_text(dir.path() / "TEST1.scene.json"));

  auto file = client.Get("/data/TEST1.types.svg");
  REQUIRE(file);
  CHECK(file->body == test::read_text(dir.path() / "TEST1.types.svg"));

  for (const char* path : {"/api/scenes/NOPE", "/nothing/here", "/api/scenes/..%2Fetc"}) {
    auto missing = client.Get(path);
    REQUIRE(missing);
    CHECK(missing->status == 404);
  }

  // a second server on the same port is refused
  RunConfig busy;
  busy.output_dir = dir.path();
  busy.port = server.port();
  std::ostringstream busy_err;
  CHECK(cmd_serve(busy, busy_err) == kExitPortBusy);

  server.stop();
  thread.join();
}
