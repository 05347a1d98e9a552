#include "modie/fetch.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <httplib.h>
#include <openssl/evp.h>
#include <unistd.h>

namespace modie {

namespace {

bool valid_id(std::string_view id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
           return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
         });
}

class HttplibTransport final : public Transport {
 public:
  HttpResponse get(const std::string& url) override {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw FetchError(FetchErrorCode::NetworkError, "bad URL '" + url + "'");
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    auto result = client.Get(path);
    if (!result) return {0, httplib::to_string(result.error())};
    return {result->status, std::move(result->body)};
  }
};

std::string temp_name(std::string_view id) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream name;
  name << '.' << id << ".tmp." << ::getpid() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id())
       << '.' << counter++;
  return name.str();
}

}  // namespace

std::unique_ptr<Transport> make_http_transport() { return std::make_unique<HttplibTransport>(); }

std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::string_view id, SourceKind kind) {
  return cache_dir / std::string(to_string(kind)) / (std::string(id) + ".pdb");
}

std::string structure_url(std::string_view id, SourceKind kind, const FetchOptions& options) {
  std::string url = kind == SourceKind::XRay ? options.xray_url_template : options.predicted_url_template;
  for (auto pos = url.find("{id}"); pos != std::string::npos; pos = url.find("{id}", pos + id.size()))
    url.replace(pos, 4, id);
  return url;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::filesystem::path fetch_structure(std::string_view id, SourceKind kind, const std::filesystem::path& cache_dir,
                                      Transport& transport, const FetchOptions& options) {
  if (!valid_id(id)) throw FetchError(FetchErrorCode::InvalidId, "invalid structure id '" + std::string(id) + "'");
  const auto target = cache_path(cache_dir, id, kind);
  if (std::filesystem::is_regular_file(target)) return target;

  const std::string url = structure_url(id, kind, options);
  HttpResponse response;
  try {
    response = transport.get(url);
  } catch (const FetchError&) {
    throw;
  } catch (const std::exception& e) {
    throw FetchError(FetchErrorCode::NetworkError, "GET " + url + " failed: " + e.what());
  }
  if (response.status == 404)
    throw FetchError(FetchErrorCode::NotFound, "structure '" + std::string(id) + "' not found at " + url);
  if (response.status != 200)
    throw FetchError(FetchErrorCode::NetworkError,
                     "GET " + url + " returned " + std::to_string(response.status) +
                         (response.status == 0 ? " (" + response.body + ")" : ""));

  if (auto it = options.sha256.find(id); it != options.sha256.end()) {
    const std::string actual = sha256_hex(response.body);
    if (actual != it->second)
      throw FetchError(FetchErrorCode::ChecksumMismatch,
                       "checksum mismatch for '" + std::string(id) + "': expected " + it->second + ", got " + actual);
  }

  std::filesystem::create_directories(target.parent_path());
  const auto temp = target.parent_path() / temp_name(id);
  {
    std::ofstream out(temp, std::ios::binary);
    out.write(response.body.data(), static_cast<std::streamsize>(response.body.size()));
    if (!out) throw FetchError(FetchErrorCode::NetworkError, "cannot write " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw FetchError(FetchErrorCode::NetworkError, "cannot move download into " + target.string() + ": " + ec.message());
  }
  return target;
}

}  // namespace modie
