#include "evlog/inspect.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace evlog {

TableReport inspect_table(const EventTable& table) {
  TableReport report;
  report.events = table.size();
  std::map<std::string, std::set<AttributeValue>, std::less<>> values;
  std::map<std::string, std::size_t, std::less<>> defined;
  std::map<std::string, std::set<AttributeValue::Kind>, std::less<>> kinds;
  for (const auto& e : table.events()) {
    for (const auto& [name, v] : e.attrs) {
      values[name].insert(v);
      ++defined[name];
      kinds[name].insert(v.kind());
    }
  }

  for (const auto& [name, vals] : values) {
    AttributeReport a;
    a.name = name;
    a.defined = defined[name];
    a.distinct = vals.size();
    const auto& k = kinds[name];
    a.inferred_type = k.size() == 1 ? std::string(to_string(*k.begin())) : "mixed";

    if (name == kTimeAttribute) {
      a.flags.emplace_back("timestamp");
    } else {
      const bool label = std::any_of(vals.begin(), vals.end(), [](const AttributeValue& v) {
        const auto* t = v.as_text();
        return t != nullptr && t->find(' ') != std::string::npos;
      });
      if (label) a.flags.emplace_back("label-like values");
      if (k.contains(AttributeValue::Kind::Real)) a.flags.emplace_back("real-valued");
      if (k.contains(AttributeValue::Kind::Time)) a.flags.emplace_back("time-valued");
      if (a.distinct <= 2 && a.defined > a.distinct) a.flags.emplace_back("enumeration");
      if (a.distinct == a.defined && a.defined > 1 && a.defined == table.size()) {
        a.flags.emplace_back("unique per event");
      }
    }
    report.attributes.push_back(std::move(a));
  }

  std::sort(report.attributes.begin(), report.attributes.end(),
            [](const AttributeReport& x, const AttributeReport& y) {
              if (x.candidate() != y.candidate()) return x.candidate();
              if (x.defined != y.defined) return x.defined > y.defined;
              if (x.distinct != y.distinct) return x.distinct > y.distinct;
              return x.name < y.name;
            });
  return report;
}

std::string format_report(const TableReport& report) {
  std::string out;
  for (const auto& a : report.attributes) {
    out += a.name + ": " + std::to_string(a.defined) + " defined, " + std::to_string(a.distinct) +
           " distinct, " + a.inferred_type;
    if (a.candidate()) {
      out += ", case id candidate";
    } else {
      out += ", likely not an entity type (";
      for (std::size_t i = 0; i < a.flags.size(); ++i) {
        if (i) out += "; ";
        out += a.flags[i];
      }
      out += ")";
    }
    out += '\n';
  }
  return out;
}

}  // namespace evlog
