#include "modie/server.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <httplib.h>
#include <json.hpp>

namespace modie {

namespace {

constexpr std::string_view kSceneSuffix = ".scene.json";

bool safe_accession(const std::string& accession) {
  return !accession.empty() && std::all_of(accession.begin(), accession.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  }) && accession.find("..") == std::string::npos;
}

}  // namespace

struct SceneServer::Impl {
  std::filesystem::path output_dir;
  std::filesystem::path ui_dir;
  httplib::Server server;
  int port = -1;
};

SceneServer::SceneServer(std::filesystem::path output_dir, std::filesystem::path ui_dir)
    : impl_(std::make_unique<Impl>()) {
  impl_->output_dir = std::move(output_dir);
  impl_->ui_dir = std::move(ui_dir);
  auto& server = impl_->server;
  const auto out_dir = impl_->output_dir;

  server.Get("/api/scenes", [out_dir](const httplib::Request&, httplib::Response& res) {
    std::vector<std::string> accessions;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(out_dir, ec)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.size() > kSceneSuffix.size() && name.ends_with(kSceneSuffix))
        accessions.push_back(name.substr(0, name.size() - kSceneSuffix.size()));
    }
    std::sort(accessions.begin(), accessions.end());
    res.set_content(nlohmann::json(accessions).dump(), "application/json");
  });

  server.Get(R"(/api/scenes/([^/]+))", [out_dir](const httplib::Request& req, httplib::Response& res) {
    const std::string accession = req.matches[1];
    const auto path = out_dir / (accession + std::string(kSceneSuffix));
    std::ifstream in(path, std::ios::binary);
    if (!safe_accession(accession) || !in) {
      res.status = 404;
      return;
    }
    std::ostringstream body;
    body << in.rdbuf();
    res.set_content(body.str(), "application/json");
  });

  server.set_mount_point("/data", impl_->output_dir.string());
  if (!impl_->ui_dir.empty()) server.set_mount_point("/", impl_->ui_dir.string());
  server.set_file_extension_and_mimetype_mapping("json", "application/json");
  // SO_REUSEPORT (the library default) would let a second server share a busy port
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
}

SceneServer::~SceneServer() { stop(); }

bool SceneServer::bind(const std::string& host, int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
    return impl_->port > 0;
  }
  if (!impl_->server.bind_to_port(host, port)) return false;
  impl_->port = port;
  return true;
}

int SceneServer::port() const noexcept { return impl_->port; }

void SceneServer::listen() { impl_->server.listen_after_bind(); }

void SceneServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void SceneServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace modie
