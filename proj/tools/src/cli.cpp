#include "evlog/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "evlog/classifier.hpp"
#include "evlog/csv.hpp"
#include "evlog/error.hpp"
#include "evlog/inspect.hpp"
#include "evlog/log.hpp"
#include "evlog/preprocess.hpp"
#include "evlog/serialization.hpp"
#include "evlog/service/api.hpp"
#include "evlog/xes.hpp"

namespace evlog::cli {

namespace {

struct Options {
  std::string input;
  std::string case_id;
  std::string classifier;
  std::string stack;
  std::string format = "variants";
  std::vector<std::string> time_formats;
  std::string delimiter = ",";
  std::string host = "127.0.0.1";
  int port = 8080;
  bool serve = false;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownAttribute:
    case ErrorCode::TimeAsCaseId:
    case ErrorCode::NoActivityAttribute:
    case ErrorCode::PredicateArityError:
    case ErrorCode::SchemaError:
      return kUsageError;
    default:
      return kDataError;
  }
}

CsvProfile profile_of(const Options& o) {
  CsvProfile p;
  if (o.delimiter == "\\t" || o.delimiter == "tab") {
    p.delimiter = '\t';
  } else if (o.delimiter.size() == 1) {
    p.delimiter = o.delimiter[0];
  } else {
    throw UsageError("--delimiter must be a single character");
  }
  if (!o.time_formats.empty()) p.timestamp_formats = o.time_formats;
  return p;
}

Classifier classifier_of(const Options& o, const EventTable& table) {
  if (o.classifier.empty()) throw UsageError("--classifier is required");
  auto cl = Classifier::parse(o.classifier);
  const auto names = attribute_names(table);
  for (const auto& a : cl.attributes()) {
    if (!names.contains(a)) {
      throw Error(ErrorCode::UnknownAttribute,
                  "classifier attribute '" + a + "' is not defined on any event");
    }
  }
  return cl;
}

FilterStack read_stack(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open stack file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("stack file is not JSON: ") + e.what());
  }
  return stack_from_json(j);
}

void print_warnings(const StructuredEventLog& log, std::ostream& err) {
  for (const auto& w : log.warnings()) err << "warning: " << w << '\n';
}

int cmd_inspect(const Options& o, std::ostream& out) {
  const auto table = read_csv_file(o.input, profile_of(o));
  out << format_report(inspect_table(table));
  return kOk;
}

int cmd_variants(const Options& o, std::ostream& out, std::ostream& err) {
  const auto table = read_csv_file(o.input, profile_of(o));
  const auto cl = classifier_of(o, table);
  const auto log = extract_log(table, o.case_id);
  print_warnings(log, err);
  out << format_variants(simple_log(log, cl));
  return kOk;
}

int cmd_filter(const Options& o, std::ostream& out, std::ostream& err) {
  const auto table = read_csv_file(o.input, profile_of(o));
  FilterStack stack;
  if (!o.stack.empty()) stack = read_stack(o.stack);
  std::optional<Classifier> cl;
  if (o.format == "variants") cl = classifier_of(o, table);

  const auto log = extract_log(table, o.case_id);
  print_warnings(log, err);
  const auto result = apply_stack(log, stack);
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const auto& s = result.steps[i];
    err << "step " << i << ' ' << s.kind << ": cases " << s.cases_in << " -> "
        << s.cases_out << ", events " << s.events_in << " -> " << s.events_out << '\n';
  }

  if (o.format == "variants") {
    out << format_variants(simple_log(result.log, *cl));
  } else if (o.format == "csv") {
    out << write_csv(result.log);
  } else if (o.format == "xes") {
    out << export_xes(result.log);
  } else {
    out << stats_to_json(result.steps).dump(2) << '\n';
  }
  return kOk;
}

int cmd_serve(const Options& o, std::ostream& err) {
  service::SessionStore store;
  service::Api api(store);
  err << "listening on http://" << o.host << ':' << o.port << "/v1\n" << std::flush;
  if (!service::serve(api, o.host, o.port)) {
    err << "error: cannot listen on " << o.host << ':' << o.port << '\n';
    return kDataError;
  }
  return kOk;
}

void add_input(CLI::App* app, Options& o) {
  app->add_option("-i,--input", o.input, "event table (CSV)")->required();
  app->add_option("--time-format", o.time_formats,
                  "timestamp pattern, e.g. \"DD/MM/YYYY HH:mm\" or ISO-8601 (repeatable)");
  app->add_option("--delimiter", o.delimiter, "field delimiter (\\t for tab)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Event log extraction and pre-processing", "evlog"};
  app.require_subcommand(0, 1);
  app.add_flag("--serve", o.serve, "start the HTTP API");
  app.add_option("--port", o.port, "HTTP port for --serve");
  app.add_option("--host", o.host, "HTTP host for --serve");

  auto* inspect = app.add_subcommand("inspect", "rank attributes as case id candidates");
  add_input(inspect, o);

  auto* variants = app.add_subcommand("variants", "print the simple event log");
  add_input(variants, o);
  variants->add_option("--case-id", o.case_id, "case identifier attribute")->required();
  variants->add_option("--classifier", o.classifier, "event classifier, a[+b...]")->required();

  auto* filter = app.add_subcommand("filter", "apply a filter stack and export the result");
  add_input(filter, o);
  filter->add_option("--case-id", o.case_id, "case identifier attribute")->required();
  filter->add_option("--classifier", o.classifier, "event classifier for --format variants");
  filter->add_option("--stack", o.stack, "filter stack (JSON)");
  filter->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"variants", "csv", "xes", "stats"}));

  auto* serve = app.add_subcommand("serve", "start the HTTP API");
  serve->add_option("--port", o.port, "HTTP port");
  serve->add_option("--host", o.host, "HTTP host");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*inspect) return cmd_inspect(o, out);
    if (*variants) return cmd_variants(o, out, err);
    if (*filter) return cmd_filter(o, out, err);
    if (*serve || o.serve) return cmd_serve(o, err);
    err << app.help();
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace evlog::cli
