#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "evlog/service/session_store.hpp"

namespace httplib {
class Server;
}

namespace evlog::service {

struct Request {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> params;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
};

struct ApiOptions {
  std::size_t max_body_bytes = 64u << 20;
  std::string cors_origin = "*";
};

/// Routes /v1 requests onto a SessionStore. Transport-free so that the
/// routing and status mapping can be exercised without sockets.
///
///   POST   /v1/tables                   CSV body, profile in query params
///   GET    /v1/sessions/{id}
///   DELETE /v1/sessions/{id}
///   PUT    /v1/sessions/{id}/choices    {"case_id", "classifier"}
///   PUT    /v1/sessions/{id}/stack      filter stack JSON
///   GET    /v1/sessions/{id}/result
class Api {
public:
  explicit Api(SessionStore& store, ApiOptions options = {});

  Response handle(const Request& request);
  const ApiOptions& options() const noexcept { return options_; }

private:
  SessionStore& store_;
  ApiOptions options_;
};

/// Registers the API on a cpp-httplib server, including CORS headers.
void mount(httplib::Server& server, Api& api);

/// Blocks serving on host:port until the server stops.
bool serve(Api& api, const std::string& host, int port);

}  // namespace evlog::service
