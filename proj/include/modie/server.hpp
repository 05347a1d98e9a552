#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace modie {

/// Read-only HTTP server over generated outputs.
///
/// GET /api/scenes             JSON array of accessions with a scene document
/// GET /api/scenes/<accession> that scene document, byte for byte
/// GET /data/<file>            any generated file
/// GET /<file>                 the UI bundle, when a UI directory is given
class SceneServer {
 public:
  SceneServer(std::filesystem::path output_dir, std::filesystem::path ui_dir = {});
  ~SceneServer();
  SceneServer(const SceneServer&) = delete;
  SceneServer& operator=(const SceneServer&) = delete;

  /// Bind to host:port; port 0 picks a free port. Returns false when busy.
  bool bind(const std::string& host, int port);
  int port() const noexcept;
  /// Serve until stop() is called. Requires a successful bind().
  void listen();
  /// Blocks until listen() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace modie
