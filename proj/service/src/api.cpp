#include "evlog/service/api.hpp"

#include <regex>

#include <httplib.h>

#include "evlog/error.hpp"

namespace evlog::service {

namespace {

Response json_response(int status, const Json& body) {
  return Response{status, body.dump()};
}

Response error_response(int status, const std::string& code, const std::string& message,
                        std::optional<std::size_t> step = std::nullopt) {
  Json body{{"error", {{"code", code}, {"message", message}}}};
  if (step) body["error"]["step"] = *step;
  return json_response(status, body);
}

CsvProfile profile_from(const std::multimap<std::string, std::string>& params) {
  CsvProfile profile;
  if (auto it = params.find("delimiter"); it != params.end()) {
    const auto& d = it->second;
    if (d == "\\t" || d == "tab") {
      profile.delimiter = '\t';
    } else if (d.size() == 1) {
      profile.delimiter = d[0];
    } else {
      throw ApiError(400, "BadParameter", "delimiter must be a single character");
    }
  }
  auto [tf_begin, tf_end] = params.equal_range("time_format");
  if (tf_begin != tf_end) {
    profile.timestamp_formats.clear();
    for (auto it = tf_begin; it != tf_end; ++it) profile.timestamp_formats.push_back(it->second);
  }
  if (auto it = params.find("time_column"); it != params.end()) profile.time_column = it->second;
  auto [n_begin, n_end] = params.equal_range("null");
  for (auto it = n_begin; it != n_end; ++it) profile.null_markers.insert(it->second);
  if (auto it = params.find("shared_attribute"); it != params.end()) {
    profile.shared_attribute = it->second;
  }
  return profile;
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ApiError(400, "MalformedJson", e.what());
  }
}

const std::regex kSessionPath{R"(^/v1/sessions/([0-9a-f]+)(/(choices|stack|result))?/?$)"};

}  // namespace

Api::Api(SessionStore& store, ApiOptions options) : store_(store), options_(std::move(options)) {}

Response Api::handle(const Request& req) {
  try {
    if (req.body.size() > options_.max_body_bytes) {
      return error_response(413, "PayloadTooLarge",
                            "body exceeds " + std::to_string(options_.max_body_bytes) + " bytes");
    }
    store_.expire_idle();

    if (req.path == "/v1/tables" || req.path == "/v1/tables/") {
      if (req.method != "POST") return error_response(405, "MethodNotAllowed", "use POST");
      return json_response(200, store_.create(req.body, profile_from(req.params)));
    }

    std::smatch m;
    if (!std::regex_match(req.path, m, kSessionPath)) {
      return error_response(404, "NotFound", "no route for " + req.path);
    }
    const std::string id = m[1];
    const std::string sub = m[3];

    if (sub.empty()) {
      if (req.method == "GET") return json_response(200, store_.describe(id));
      if (req.method == "DELETE") {
        if (!store_.remove(id)) return error_response(404, "UnknownSession", "no session '" + id + "'");
        return Response{204, ""};
      }
      return error_response(405, "MethodNotAllowed", "use GET or DELETE");
    }
    if (sub == "result") {
      if (req.method != "GET") return error_response(405, "MethodNotAllowed", "use GET");
      return json_response(200, store_.result(id));
    }
    if (req.method != "PUT") return error_response(405, "MethodNotAllowed", "use PUT");
    const Json body = parse_body(req.body);
    if (sub == "choices") return json_response(200, store_.set_choices(id, body));
    return json_response(200, store_.set_stack(id, body));
  } catch (const ApiError& e) {
    return error_response(e.status(), e.code(), e.what(), e.step());
  } catch (const Error& e) {
    return error_response(422, std::string(to_string(e.code())), e.what(), e.step());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

void mount(httplib::Server& server, Api& api) {
  const std::string origin = api.options().cors_origin;
  server.set_payload_max_length(api.options().max_body_bytes + 1);
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto forward = [&api](const httplib::Request& hreq, httplib::Response& hres) {
    Request req{hreq.method, hreq.path, {}, hreq.body};
    for (const auto& [k, v] : hreq.params) req.params.emplace(k, v);
    auto res = api.handle(req);
    hres.status = res.status;
    if (!res.body.empty()) hres.set_content(res.body, "application/json");
  };
  const std::string any = R"(/v1/.*)";
  server.Post(any, forward);
  server.Get(any, forward);
  server.Put(any, forward);
  server.Delete(any, forward);
  server.Options(any, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

bool serve(Api& api, const std::string& host, int port) {
  httplib::Server server;
  mount(server, api);
  return server.listen(host, port);
}

}  // namespace evlog::service
