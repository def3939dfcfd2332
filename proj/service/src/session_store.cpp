#include "evlog/service/session_store.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "evlog/classifier.hpp"
#include "evlog/error.hpp"

namespace evlog::service {

struct SessionStore::Session {
  std::mutex mutex;
  EventTable table;
  Json report;
  std::optional<std::string> case_id;
  std::optional<Classifier> classifier;
  FilterStack stack;
  Json stack_json = Json{{"version", 1}, {"steps", Json::array()}};
  std::map<std::string, Json> cache;
  std::chrono::steady_clock::time_point last_used;
};

namespace {

ApiError to_api_error(const Error& e, int status) {
  return ApiError(status, std::string(to_string(e.code())), e.what(), e.step());
}

std::string cache_key(const std::string& case_id, const Classifier& cl, const Json& stack) {
  return case_id + '\x1f' + cl.name() + '\x1f' + stack.dump();
}

Classifier classifier_from(const Json& j) {
  if (j.is_string()) return Classifier::parse(j.get<std::string>());
  if (!j.is_array()) {
    throw Error(ErrorCode::SchemaError, "classifier must be a string or an array of names");
  }
  std::vector<std::string> attrs;
  for (const auto& a : j) {
    if (!a.is_string()) throw Error(ErrorCode::SchemaError, "classifier names must be strings");
    attrs.push_back(a.get<std::string>());
  }
  return Classifier(std::move(attrs));
}

}  // namespace

Json report_to_json(const TableReport& report) {
  Json attrs = Json::array();
  for (const auto& a : report.attributes) {
    attrs.push_back({{"name", a.name},
                     {"defined", a.defined},
                     {"distinct", a.distinct},
                     {"type", a.inferred_type},
                     {"candidate", a.candidate()},
                     {"flags", a.flags}});
  }
  return Json{{"events", report.events}, {"attributes", attrs}};
}

Json variant_summary(const StructuredEventLog& log, const Classifier& classifier) {
  const auto simple = simple_log(log, classifier);
  const auto freq = simple.class_frequencies();

  std::vector<std::pair<EventClass, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first.text() < b.first.text();
  });
  std::map<EventClass, std::size_t> color;
  Json alphabet = Json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    color.emplace(ranked[i].first, i);
    alphabet.push_back({{"class", ranked[i].first.text()},
                        {"count", ranked[i].second},
                        {"color", i}});
  }

  Json variants = Json::array();
  for (const auto& v : simple.sorted_variants()) {
    Json classes = Json::array();
    Json colors = Json::array();
    for (const auto& k : v.classes) {
      classes.push_back(k.text());
      colors.push_back(color.at(k));
    }
    variants.push_back({{"count", v.count}, {"classes", classes}, {"colors", colors}});
  }
  return Json{{"case_id", log.id_attribute()},
              {"classifier", classifier.attributes()},
              {"cases", log.size()},
              {"events", log.event_count()},
              {"uncorrelated", log.uncorrelated_events()},
              {"warnings", log.warnings()},
              {"alphabet", alphabet},
              {"variants", variants}};
}

SessionStore::SessionStore(StoreOptions options) : options_(std::move(options)) {}

std::string SessionStore::new_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[40];
  ++counter_;
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "UnknownSession", "no session '" + id + "'");
  return it->second;
}

Json SessionStore::create(std::string_view csv, const CsvProfile& profile) {
  if (csv.empty()) throw ApiError(400, "EmptyBody", "request body must contain a CSV table");
  auto session = std::make_shared<Session>();
  try {
    session->table = parse_csv(csv, profile);
  } catch (const Error& e) {
    throw to_api_error(e, 400);
  }
  session->report = report_to_json(inspect_table(session->table));
  session->last_used = options_.clock();

  std::lock_guard lock(mutex_);
  std::string id = new_id();
  while (sessions_.contains(id)) id = new_id();
  sessions_.emplace(id, session);
  return Json{{"session_id", id}, {"report", session->report}};
}

namespace {

Json compute_result(const EventTable& table, const std::string& case_id,
                    const Classifier& classifier, const FilterStack& stack,
                    const Json& stack_json) {
  StructuredEventLog log;
  try {
    log = extract_log(table, case_id);
  } catch (const Error& e) {
    throw to_api_error(e, 422);
  }
  StackResult applied;
  try {
    applied = apply_stack(log, stack);
  } catch (const Error& e) {
    throw to_api_error(e, 422);
  }
  return Json{{"choices", {{"case_id", case_id}, {"classifier", classifier.attributes()}}},
              {"stack", stack_json},
              {"steps", stats_to_json(applied.steps)},
              {"unfiltered", {{"cases", log.size()}, {"events", log.event_count()}}},
              {"summary", variant_summary(applied.log, classifier)}};
}

Json cached_result(std::map<std::string, Json>& cache, const EventTable& table,
                   const std::string& case_id, const Classifier& classifier,
                   const FilterStack& stack, const Json& stack_json) {
  const auto key = cache_key(case_id, classifier, stack_json);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto result = compute_result(table, case_id, classifier, stack, stack_json);
  cache.emplace(key, result);
  return result;
}

}  // namespace

Json SessionStore::set_choices(const std::string& id, const Json& body) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = options_.clock();
  if (!body.is_object() || !body.contains("case_id") || !body.at("case_id").is_string() ||
      !body.contains("classifier")) {
    throw ApiError(422, "SchemaError", "expected {\"case_id\": string, \"classifier\": [names]}");
  }
  const auto case_id = body.at("case_id").get<std::string>();
  std::optional<Classifier> classifier;
  try {
    classifier = classifier_from(body.at("classifier"));
  } catch (const Error& e) {
    throw to_api_error(e, 422);
  }
  const auto names = attribute_names(s->table);
  for (const auto& a : classifier->attributes()) {
    if (!names.contains(a)) {
      throw ApiError(422, "UnknownAttribute",
                     "classifier attribute '" + a + "' is not defined on any event");
    }
  }
  // Validates the case identifier before the choice is committed.
  auto result = compute_result(s->table, case_id, *classifier, s->stack, s->stack_json);
  s->cache.clear();
  s->case_id = case_id;
  s->classifier = std::move(classifier);
  s->cache.emplace(cache_key(case_id, *s->classifier, s->stack_json), result);
  return result;
}

Json SessionStore::set_stack(const std::string& id, const Json& body) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = options_.clock();
  FilterStack stack;
  try {
    stack = stack_from_json(body);
  } catch (const Error& e) {
    throw to_api_error(e, 422);
  }
  const Json canonical = stack_to_json(stack);
  if (s->case_id && s->classifier) {
    auto result = compute_result(s->table, *s->case_id, *s->classifier, stack, canonical);
    s->cache.clear();
    s->stack = std::move(stack);
    s->stack_json = canonical;
    s->cache.emplace(cache_key(*s->case_id, *s->classifier, canonical), result);
    return result;
  }
  s->cache.clear();
  s->stack = std::move(stack);
  s->stack_json = canonical;
  return Json{{"choices", nullptr}, {"stack", canonical}, {"steps", nullptr}, {"summary", nullptr}};
}

Json SessionStore::result(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = options_.clock();
  if (!s->case_id || !s->classifier) {
    throw ApiError(409, "NoChoices", "choose a case identifier and classifier first");
  }
  return cached_result(s->cache, s->table, *s->case_id, *s->classifier, s->stack, s->stack_json);
}

Json SessionStore::describe(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = options_.clock();
  Json out{{"session_id", id}, {"report", s->report}, {"stack", s->stack_json}};
  if (s->case_id && s->classifier) {
    out["result"] =
        cached_result(s->cache, s->table, *s->case_id, *s->classifier, s->stack, s->stack_json);
  } else {
    out["result"] = nullptr;
  }
  return out;
}

bool SessionStore::remove(const std::string& id) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(id) > 0;
}

std::size_t SessionStore::expire_idle() {
  const auto now = options_.clock();
  std::lock_guard lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
    if (session_lock.owns_lock() && now - it->second->last_used > options_.idle_timeout) {
      session_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::size_t SessionStore::cached_results(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->cache.size();
}

}  // namespace evlog::service
