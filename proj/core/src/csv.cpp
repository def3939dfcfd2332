#include "evlog/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "evlog/error.hpp"
#include "evlog/log.hpp"
#include "evlog/timestamp.hpp"

namespace evlog {

namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<Record> split_records(std::string_view bytes, char delim) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  current.line = line;
  bool in_quotes = false;
  bool field_started = false;
  bool quoted_field = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
    quoted_field = false;
  };
  auto end_record = [&] {
    const bool blank = current.fields.size() == 0 && !field_started && field.empty();
    if (!blank) {
      end_field();
      records.push_back(std::move(current));
    }
    current = Record{};
    current.line = line;
  };

  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const char c = bytes[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (field_started) {
        throw Error(ErrorCode::MalformedCsv,
                    "line " + std::to_string(line) + ": unexpected quote inside unquoted field");
      }
      in_quotes = true;
      quoted_field = true;
      field_started = true;
    } else if (c == delim) {
      end_field();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
      ++line;
      end_record();
    } else {
      if (quoted_field) {
        throw Error(ErrorCode::MalformedCsv,
                    "line " + std::to_string(line) + ": text after closing quote");
      }
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::MalformedCsv, "unterminated quoted field");
  }
  if (!current.fields.empty() || field_started || !field.empty()) {
    end_field();
    records.push_back(std::move(current));
  }
  return records;
}

bool is_canonical_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  const std::string_view digits = s.front() == '-' ? s.substr(1) : s;
  if (digits.empty() || (digits.size() > 1 && digits.front() == '0')) return false;
  if (s == "-0") return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool is_canonical_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || c == '.' || c == '-' || c == 'e' || c == 'E' || c == '+')) {
      return false;
    }
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return false;
  return format_real(out) == s;
}

std::string quote(std::string_view s, char delim) {
  const bool needs = s.find_first_of(std::string{delim, '"', '\r', '\n'}) != std::string_view::npos;
  if (!needs) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::string& out, const std::vector<std::string>& cells, char delim) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += delim;
    out += quote(cells[i], delim);
  }
  out += '\n';
}

std::vector<std::string> column_order(const std::vector<std::string>& preferred,
                                      const AttributeNameSet& present) {
  std::vector<std::string> cols = preferred;
  for (const auto& name : present) {
    if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
  }
  return cols;
}

}  // namespace

EventTable parse_csv(std::string_view bytes, const CsvProfile& profile) {
  if (profile.timestamp_formats.empty()) {
    throw Error(ErrorCode::SchemaError, "CSV profile needs at least one timestamp format");
  }
  if (profile.time_column.empty()) {
    throw Error(ErrorCode::SchemaError, "CSV profile needs a time column");
  }
  const auto records = split_records(bytes, profile.delimiter);
  if (records.empty()) {
    throw Error(ErrorCode::MalformedCsv, "empty input: a header row is required");
  }

  std::vector<std::string> header = records.front().fields;
  std::size_t time_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (header[i] == header[j]) {
        throw Error(ErrorCode::MalformedCsv, "duplicate column '" + header[i] + "'");
      }
    }
    if (header[i] == profile.time_column) time_col = i;
  }
  if (time_col == header.size()) {
    throw Error(ErrorCode::MissingTimeColumn,
                "header has no time column '" + profile.time_column + "'");
  }
  if (profile.time_column != kTimeAttribute) {
    for (const auto& h : header) {
      if (h == kTimeAttribute) {
        throw Error(ErrorCode::MalformedCsv,
                    "column 'time' clashes with the renamed time column");
      }
    }
    header[time_col] = std::string(kTimeAttribute);
  }

  std::vector<Event> events;
  events.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const std::size_t row = r - 1;
    const auto& rec = records[r];
    const auto where = "line " + std::to_string(rec.line);
    if (rec.fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedCsv,
                  where + ": expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(rec.fields.size()),
                  row);
    }
    Event e;
    e.index = row;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& cell = rec.fields[c];
      const bool null = cell.empty() || profile.null_markers.contains(cell);
      if (c == time_col) {
        const auto t = null ? std::nullopt : parse_timestamp(cell, profile.timestamp_formats);
        if (!t) {
          throw Error(ErrorCode::UnparseableTimestamp,
                      where + ": cannot parse timestamp '" + cell + "'", row);
        }
        e.attrs.emplace(header[c], AttributeValue::time(*t));
        e.source_text.emplace(header[c], cell);
        continue;
      }
      if (null) continue;
      std::int64_t i = 0;
      double d = 0;
      if (is_canonical_int(cell, i)) {
        e.attrs.emplace(header[c], AttributeValue::integer(i));
      } else if (is_canonical_real(cell, d)) {
        e.attrs.emplace(header[c], AttributeValue::real(d));
      } else if (auto t = parse_timestamp(cell, profile.timestamp_formats)) {
        e.attrs.emplace(header[c], AttributeValue::time(*t));
        e.source_text.emplace(header[c], cell);
      } else {
        e.attrs.emplace(header[c], AttributeValue::text(cell));
      }
    }
    if (e.attrs.size() < 2) {
      throw Error(ErrorCode::RowWithOnlyTime, where + ": row defines only the timestamp", row);
    }
    events.push_back(std::move(e));
  }

  std::string shared;
  if (profile.shared_attribute) {
    shared = *profile.shared_attribute;
  } else {
    for (const auto& h : header) {
      if (h == kTimeAttribute) continue;
      bool everywhere = true;
      for (const auto& e : events) {
        if (!e.attrs.contains(h)) {
          everywhere = false;
          break;
        }
      }
      if (everywhere) {
        shared = h;
        break;
      }
    }
    if (shared.empty()) {
      throw Error(ErrorCode::InvalidTable, "no attribute besides time is defined on every row");
    }
  }
  return EventTable(std::move(events), std::move(shared), std::move(header));
}

EventTable read_csv_file(const std::filesystem::path& path, const CsvProfile& profile) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedCsv, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), profile);
}

std::string cell_text(const Event& e, std::string_view name) {
  if (auto it = e.source_text.find(name); it != e.source_text.end()) return it->second;
  return get_attr(e, name).to_string();
}

std::string write_csv(const EventTable& table, char delimiter) {
  const auto cols = column_order(table.columns(), attribute_names(table));
  std::string out;
  write_row(out, cols, delimiter);
  std::vector<std::string> cells(cols.size());
  for (const auto& e : table.events()) {
    for (std::size_t i = 0; i < cols.size(); ++i) cells[i] = cell_text(e, cols[i]);
    write_row(out, cells, delimiter);
  }
  return out;
}

std::string write_csv(const StructuredEventLog& log, char delimiter) {
  AttributeNameSet present;
  for (const auto& c : log.cases()) {
    for (const auto& e : c.trace) {
      for (const auto& [name, v] : e.attrs) present.insert(name);
    }
  }
  const auto cols = column_order(log.columns(), present);
  std::string out;
  write_row(out, cols, delimiter);
  std::vector<std::string> cells(cols.size());
  for (const auto& c : log.cases()) {
    for (const auto& e : c.trace) {
      for (std::size_t i = 0; i < cols.size(); ++i) cells[i] = cell_text(e, cols[i]);
      write_row(out, cells, delimiter);
    }
  }
  return out;
}

}  // namespace evlog
