#include "evlog/classifier.hpp"

#include <algorithm>

#include "evlog/error.hpp"

namespace evlog {

Classifier::Classifier(std::vector<std::string> attrs, std::string separator)
    : attrs_(std::move(attrs)), separator_(std::move(separator)) {
  if (attrs_.empty()) throw Error(ErrorCode::SchemaError, "classifier needs at least one attribute");
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    if (attrs_[i].empty()) throw Error(ErrorCode::SchemaError, "empty classifier attribute name");
    for (std::size_t j = 0; j < i; ++j) {
      if (attrs_[i] == attrs_[j]) {
        throw Error(ErrorCode::SchemaError, "classifier repeats attribute '" + attrs_[i] + "'");
      }
    }
  }
}

Classifier Classifier::parse(std::string_view spec, char separator) {
  std::vector<std::string> attrs;
  std::size_t start = 0;
  while (true) {
    const auto pos = spec.find(separator, start);
    attrs.emplace_back(spec.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return Classifier(std::move(attrs), std::string(1, separator));
}

std::string Classifier::name() const {
  std::string out;
  for (std::size_t i = 0; i < attrs_.size(); ++i) {
    if (i) out += separator_;
    out += attrs_[i];
  }
  return out;
}

EventClass::EventClass(std::vector<AttributeValue> parts, std::string_view separator)
    : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) text_ += separator;
    text_ += parts_[i].to_string();
  }
}

EventClass classify(const Classifier& cl, const Event& e) {
  std::vector<AttributeValue> parts;
  parts.reserve(cl.attributes().size());
  for (const auto& a : cl.attributes()) {
    const auto& v = get_attr(e, a);
    if (v.is_undefined()) return {};
    parts.push_back(v);
  }
  return EventClass(std::move(parts), cl.separator());
}

std::set<EventClass> event_classes(const StructuredEventLog& log, const Classifier& cl) {
  std::set<EventClass> out;
  for (const auto& c : log.cases()) {
    for (const auto& e : c.trace) {
      if (auto k = classify(cl, e); !k.is_undefined()) out.insert(std::move(k));
    }
  }
  return out;
}

SimpleTrace simple_trace(const Classifier& cl, const Case& c,
                         const std::set<EventClass>& alphabet) {
  SimpleTrace out;
  out.reserve(c.trace.size());
  for (const auto& e : c.trace) {
    auto k = classify(cl, e);
    if (!k.is_undefined() && alphabet.contains(k)) out.push_back(std::move(k));
  }
  return out;
}

std::size_t SimpleEventLog::case_count() const {
  std::size_t n = 0;
  for (const auto& [trace, count] : variants) n += count;
  return n;
}

std::vector<Variant> SimpleEventLog::sorted_variants() const {
  std::vector<Variant> out;
  out.reserve(variants.size());
  for (const auto& [trace, count] : variants) out.push_back(Variant{count, trace});
  auto text_less = [](const SimpleTrace& a, const SimpleTrace& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [](const EventClass& x, const EventClass& y) { return x.text() < y.text(); });
  };
  std::stable_sort(out.begin(), out.end(), [&](const Variant& a, const Variant& b) {
    if (a.count != b.count) return a.count > b.count;
    return text_less(a.classes, b.classes);
  });
  return out;
}

std::map<EventClass, std::size_t> SimpleEventLog::class_frequencies() const {
  std::map<EventClass, std::size_t> out;
  for (const auto& k : alphabet) out.emplace(k, 0);
  for (const auto& [trace, count] : variants) {
    for (const auto& k : trace) out[k] += count;
  }
  return out;
}

SimpleEventLog simple_log(const StructuredEventLog& log, const Classifier& cl) {
  SimpleEventLog out;
  out.alphabet = event_classes(log, cl);
  for (const auto& c : log.cases()) ++out.variants[simple_trace(cl, c, out.alphabet)];
  return out;
}

std::string format_variants(const SimpleEventLog& log) {
  std::string out;
  for (const auto& v : log.sorted_variants()) {
    out += std::to_string(v.count);
    out += '\t';
    for (std::size_t i = 0; i < v.classes.size(); ++i) {
      if (i) out += ',';
      out += v.classes[i].text();
    }
    out += '\n';
  }
  return out;
}

}  // namespace evlog
