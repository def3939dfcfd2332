#include "evlog/xes.hpp"

#include "evlog/timestamp.hpp"

namespace evlog {

namespace {

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
}

void write_attribute(std::string& out, std::string_view indent, std::string_view key,
                     const AttributeValue& value) {
  auto element = [&](std::string_view tag, std::string_view text) {
    out += indent;
    out += '<';
    out += tag;
    out += " key=\"";
    escape_into(out, key);
    out += "\" value=\"";
    escape_into(out, text);
    out += "\"/>\n";
  };
  switch (value.kind()) {
    case AttributeValue::Kind::Undefined: return;
    case AttributeValue::Kind::Int: element("int", value.to_string()); return;
    case AttributeValue::Kind::Real: element("float", value.to_string()); return;
    case AttributeValue::Kind::Time: element("date", format_xes_date(*value.as_time())); return;
    case AttributeValue::Kind::Text: element("string", *value.as_text()); return;
    case AttributeValue::Kind::Set: {
      out += indent;
      out += "<list key=\"";
      escape_into(out, key);
      out += "\">\n";
      out += indent;
      out += "  <values>\n";
      const std::string inner = std::string(indent) + "    ";
      for (const auto& m : *value.as_set()) write_attribute(out, inner, key, m);
      out += indent;
      out += "  </values>\n";
      out += indent;
      out += "</list>\n";
      return;
    }
  }
}

}  // namespace

std::string export_xes(const StructuredEventLog& log, bool include_case_id_on_events) {
  const auto& id_attr = log.id_attribute();
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<log xes.version=\"1.0\" xes.features=\"\">\n";
  out += "  <extension name=\"Concept\" prefix=\"concept\" "
         "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  out += "  <extension name=\"Time\" prefix=\"time\" "
         "uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  write_attribute(out, "  ", "evlog:case-identifier", AttributeValue::text(id_attr));
  for (const auto& c : log.cases()) {
    out += "  <trace>\n";
    write_attribute(out, "    ", "concept:name", AttributeValue::text(c.id.to_string()));
    for (const auto& [name, value] : c.case_attrs) {
      if (name == id_attr) continue;
      write_attribute(out, "    ", name, value);
    }
    for (const auto& e : c.trace) {
      out += "    <event>\n";
      for (const auto& [name, value] : e.attrs) {
        if (name == id_attr && !include_case_id_on_events) continue;
        write_attribute(out, "      ", name == kTimeAttribute ? "time:timestamp" : name, value);
      }
      out += "    </event>\n";
    }
    out += "  </trace>\n";
  }
  out += "</log>\n";
  return out;
}

}  // namespace evlog
