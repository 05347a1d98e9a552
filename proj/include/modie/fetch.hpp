#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "modie/error.hpp"
#include "modie/ingest.hpp"

namespace modie {

struct HttpResponse {
  int status = 0;  ///< HTTP status, 0 when no response was received
  std::string body;
};

/// GET-only HTTP transport; injectable so tests can observe network use.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

/// Transport backed by cpp-httplib, with TLS and redirect following.
std::unique_ptr<Transport> make_http_transport();

struct FetchOptions {
  std::string xray_url_template = "https://files.rcsb.org/download/{id}.pdb";
  std::string predicted_url_template = "https://alphafold.ebi.ac.uk/files/AF-{id}-F1-model_v4.pdb";
  /// Expected lowercase hex SHA-256 of the downloaded file, keyed by id.
  std::map<std::string, std::string, std::less<>> sha256;
};

enum class FetchErrorCode { NotFound, NetworkError, ChecksumMismatch, InvalidId };

using FetchError = CodedError<FetchErrorCode>;

/// `cache_dir/<kind>/<id>.pdb`
std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::string_view id, SourceKind kind);

/// Substitute every `{id}` in the template for `kind`.
std::string structure_url(std::string_view id, SourceKind kind, const FetchOptions& options);

/// Return the cached file for `id`, downloading it first when absent.
///
/// Downloads land in a temporary file that is renamed into place, so
/// concurrent callers never observe a partial file.
std::filesystem::path fetch_structure(std::string_view id, SourceKind kind,
                                      const std::filesystem::path& cache_dir, Transport& transport,
                                      const FetchOptions& options = {});

std::string sha256_hex(std::string_view data);

}  // namespace modie
