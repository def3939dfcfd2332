#include "oracle.hpp"

#include <algorithm>
#include <sstream>

#include "evlog/classifier.hpp"
#include "evlog/event.hpp"

namespace oracle {

namespace {

using Class = std::optional<std::vector<Val>>;

const Val* lookup(const Ev& e, const std::string& a) {
  auto it = e.vals.find(a);
  return it == e.vals.end() ? nullptr : &it->second;
}

Class class_of(const Ev& e, const std::vector<std::string>& cl) {
  std::vector<Val> parts;
  for (const auto& a : cl) {
    const Val* v = lookup(e, a);
    if (!v) return std::nullopt;
    parts.push_back(*v);
  }
  return parts;
}

std::vector<std::vector<Val>> simple(const Cs& c, const std::vector<std::string>& cl) {
  std::vector<std::vector<Val>> out;
  for (const auto& e : c.trace) {
    if (auto k = class_of(e, cl)) out.push_back(*k);
  }
  return out;
}

void fill_case_attrs(Cs& c) {
  c.case_attrs.clear();
  c.time_is_case_attr = false;
  if (!c.trace.empty()) {
    for (const auto& a : kAttrs) {
      bool all = true;
      for (const auto& e : c.trace) {
        const Val* v = lookup(e, a);
        const Val* first = lookup(c.trace.front(), a);
        if (!v || !first || !(*v == *first)) all = false;
      }
      if (all) c.case_attrs[a] = *lookup(c.trace.front(), a);
    }
    c.time_is_case_attr = std::all_of(c.trace.begin(), c.trace.end(), [&](const Ev& e) {
      return e.time == c.trace.front().time;
    });
  }
  c.case_attrs["id"] = Val{false, c.id, {}};
}

bool count_cmp(Op op, std::int64_t l, std::int64_t r) {
  switch (op) {
    case Op::Eq: return l == r;
    case Op::Ne: return l != r;
    case Op::Lt: return l < r;
    case Op::Le: return l <= r;
    case Op::Gt: return l > r;
    case Op::Ge: return l >= r;
    default: return false;
  }
}

bool value_cmp(Op op, const Val* v, const std::vector<long>& operands) {
  auto equals = [&](long x) { return v && !v->is_set && v->num == x; };
  switch (op) {
    case Op::Defined: return v != nullptr;
    case Op::Undefined: return v == nullptr;
    case Op::Eq: return equals(operands[0]);
    case Op::Ne: return !equals(operands[0]);
    case Op::In: return std::any_of(operands.begin(), operands.end(), equals);
    case Op::NotIn: return std::none_of(operands.begin(), operands.end(), equals);
    default:
      if (!v || v->is_set) return false;
      return count_cmp(op, v->num, operands[0]);
  }
}

const Val* case_value(const Cs& c, const Pred& p) {
  switch (p.where) {
    case Where::Case: {
      auto it = c.case_attrs.find(p.attr);
      return it == c.case_attrs.end() ? nullptr : &it->second;
    }
    case Where::First: return c.trace.empty() ? nullptr : lookup(c.trace.front(), p.attr);
    case Where::Last: return c.trace.empty() ? nullptr : lookup(c.trace.back(), p.attr);
    case Where::At: {
      const long n = static_cast<long>(c.trace.size());
      const long i = p.position < 0 ? n + p.position : p.position;
      if (i < 0 || i >= n) return nullptr;
      return lookup(c.trace[static_cast<std::size_t>(i)], p.attr);
    }
    case Where::Event: break;
  }
  return nullptr;
}

bool holds_case(const Pred& p, const Cs& c, const Log& log) {
  switch (p.kind) {
    case Pred::True: return true;
    case Pred::False: return false;
    case Pred::And:
      for (const auto& a : p.args) {
        if (!holds_case(a, c, log)) return false;
      }
      return true;
    case Pred::Or:
      for (const auto& a : p.args) {
        if (holds_case(a, c, log)) return true;
      }
      return false;
    case Pred::Not: return !holds_case(p.args[0], c, log);
    case Pred::Cmp: return value_cmp(p.op, case_value(c, p), p.operands);
    case Pred::Length: return count_cmp(p.op, static_cast<std::int64_t>(c.trace.size()), p.number);
    case Pred::Duration:
      if (c.trace.empty()) return false;
      return count_cmp(p.op, c.trace.back().time - c.trace.front().time, p.number);
    case Pred::VariantFreq: {
      const auto mine = simple(c, p.classifier);
      std::int64_t n = 0;
      for (const auto& other : log.cases) n += simple(other, p.classifier) == mine ? 1 : 0;
      return count_cmp(p.op, n, p.number);
    }
    default: return false;
  }
}

bool holds_event(const Pred& p, const Cs& c, std::size_t i, const Log& log) {
  const Ev& e = c.trace[i];
  switch (p.kind) {
    case Pred::True: return true;
    case Pred::False: return false;
    case Pred::And:
      for (const auto& a : p.args) {
        if (!holds_event(a, c, i, log)) return false;
      }
      return true;
    case Pred::Or:
      for (const auto& a : p.args) {
        if (holds_event(a, c, i, log)) return true;
      }
      return false;
    case Pred::Not: return !holds_event(p.args[0], c, i, log);
    case Pred::Cmp: return value_cmp(p.op, lookup(e, p.attr), p.operands);
    case Pred::LogFreq: {
      const auto mine = class_of(e, p.classifier);
      std::int64_t n = 0;
      for (const auto& other : log.cases) {
        for (const auto& f : other.trace) n += class_of(f, p.classifier) == mine ? 1 : 0;
      }
      return count_cmp(p.op, n, p.number);
    }
    case Pred::LastOcc:
      for (std::size_t j = i + 1; j < c.trace.size(); ++j) {
        if (class_of(c.trace[j], p.classifier) == class_of(e, p.classifier)) return false;
      }
      return true;
    default: return false;
  }
}

Ev replace(const std::vector<Ev>& run, const Agg& spec) {
  if (run.size() == 1) return run[0];
  if (spec.policy == Agg::KeepFirst) return run.front();
  if (spec.policy == Agg::KeepLast) return run.back();
  Ev out = run.back();
  if (spec.stamp == Agg::First) out.time = run.front().time;
  if (spec.stamp == Agg::Midpoint) out.time = (run.front().time + run.back().time) / 2;
  for (const auto& a : spec.collect) {
    if (a == "id") continue;  // the case identifier is never collected
    std::set<long> members;
    for (const auto& e : run) {
      if (const Val* v = lookup(e, a)) {
        if (v->is_set) {
          members.insert(v->members.begin(), v->members.end());
        } else {
          members.insert(v->num);
        }
      }
    }
    if (members.empty()) {
      out.vals.erase(a);
    } else {
      out.vals[a] = Val{true, 0, members};
    }
  }
  return out;
}

}  // namespace

Log extract(const std::vector<Ev>& rows) {
  Log log;
  std::set<long> ids;
  for (const auto& r : rows) {
    if (const Val* v = lookup(r, "id")) {
      ids.insert(v->num);
    } else {
      ++log.uncorrelated;
    }
  }
  for (long id : ids) {
    Cs c;
    c.id = id;
    for (const auto& r : rows) {
      const Val* v = lookup(r, "id");
      if (v && v->num == id) c.trace.push_back(r);
    }
    // Insertion sort: stable, so equal times keep row order.
    for (std::size_t i = 1; i < c.trace.size(); ++i) {
      for (std::size_t j = i; j > 0 && c.trace[j].time < c.trace[j - 1].time; --j) {
        std::swap(c.trace[j], c.trace[j - 1]);
      }
    }
    fill_case_attrs(c);
    log.cases.push_back(c);
  }
  return log;
}

Log select(const Log& log, const Pred& p) {
  Log out;
  out.uncorrelated = log.uncorrelated;
  for (const auto& c : log.cases) {
    if (holds_case(p, c, log)) out.cases.push_back(c);
  }
  return out;
}

Log project(const Log& log, const Pred& p) {
  Log out;
  out.uncorrelated = log.uncorrelated;
  for (const auto& c : log.cases) {
    Cs next;
    next.id = c.id;
    for (std::size_t i = 0; i < c.trace.size(); ++i) {
      if (holds_event(p, c, i, log)) next.trace.push_back(c.trace[i]);
    }
    fill_case_attrs(next);
    out.cases.push_back(next);
  }
  return out;
}

Log aggregate(const Log& log, const Agg& spec) {
  Log out;
  out.uncorrelated = log.uncorrelated;
  for (const auto& c : log.cases) {
    Cs next;
    next.id = c.id;
    std::vector<Ev> run;
    for (const auto& e : c.trace) {
      if (!run.empty() && class_of(run.back(), spec.grouping) != class_of(e, spec.grouping)) {
        next.trace.push_back(replace(run, spec));
        run.clear();
      }
      run.push_back(e);
    }
    if (!run.empty()) next.trace.push_back(replace(run, spec));
    fill_case_attrs(next);
    out.cases.push_back(next);
  }
  return out;
}

Log apply(const Log& log, const std::vector<Step>& steps) {
  Log cur = log;
  for (const auto& s : steps) {
    if (s.kind == Step::Select) cur = select(cur, s.pred);
    if (s.kind == Step::Project) cur = project(cur, s.pred);
    if (s.kind == Step::Aggregate) cur = aggregate(cur, s.agg);
  }
  return cur;
}

// --- generators --------------------------------------------------------------

namespace {

long pick(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> kClassAttrs{"a", "b", "c"};

std::vector<std::string> random_classifier(std::mt19937_64& rng) {
  std::vector<std::string> pool = kClassAttrs;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(pick(rng, 1, 2)));
  return pool;
}

Op random_count_op(std::mt19937_64& rng) { return static_cast<Op>(pick(rng, 0, 5)); }

Pred random_cmp(std::mt19937_64& rng, Where where) {
  Pred p;
  p.kind = Pred::Cmp;
  p.where = where;
  p.attr = kAttrs[static_cast<std::size_t>(pick(rng, 0, 3))];
  if (where == Where::At) p.position = pick(rng, -3, 3);
  p.op = static_cast<Op>(pick(rng, 0, 9));
  if (p.op == Op::In || p.op == Op::NotIn) {
    for (long i = pick(rng, 1, 3); i > 0; --i) p.operands.push_back(pick(rng, 0, 4));
  } else if (p.op != Op::Defined && p.op != Op::Undefined) {
    p.operands.push_back(pick(rng, 0, 4));
  }
  return p;
}

Pred combine(std::mt19937_64& rng, int depth, Pred (*leaf)(std::mt19937_64&, int)) {
  Pred p;
  const long k = pick(rng, 0, 2);
  if (k == 2) {
    p.kind = Pred::Not;
    p.args.push_back(leaf(rng, depth - 1));
  } else {
    p.kind = k == 0 ? Pred::And : Pred::Or;
    p.args.push_back(leaf(rng, depth - 1));
    p.args.push_back(leaf(rng, depth - 1));
  }
  return p;
}

}  // namespace

std::vector<Ev> random_rows(std::mt19937_64& rng) {
  std::vector<long> pool{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<Ev> rows;
  auto random_event = [&](std::optional<long> id) {
    Ev e;
    e.time = pick(rng, 0, 15) * 60000;
    if (id) e.vals["id"] = Val{false, *id, {}};
    if (!chance(rng, 0.2)) e.vals["a"] = Val{false, pick(rng, 0, 3), {}};
    e.vals["b"] = Val{false, pick(rng, 0, 2), {}};
    if (!chance(rng, 0.4)) e.vals["c"] = Val{false, pick(rng, 0, 4), {}};
    return e;
  };
  const long cases = pick(rng, 1, 8);
  for (long c = 0; c < cases; ++c) {
    for (long i = pick(rng, 1, 10); i > 0; --i) rows.push_back(random_event(pool[c]));
  }
  for (long i = pick(rng, 0, 2); i > 0; --i) rows.push_back(random_event(std::nullopt));
  std::shuffle(rows.begin(), rows.end(), rng);
  if (!chance(rng, 0.2)) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Ev& x, const Ev& y) { return x.time < y.time; });
  }
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].row = i;
  return rows;
}

Pred random_case_pred(std::mt19937_64& rng, int depth) {
  if (depth > 0 && chance(rng, 0.35)) {
    return combine(rng, depth, [](std::mt19937_64& r, int d) { return random_case_pred(r, d); });
  }
  Pred p;
  switch (pick(rng, 0, 9)) {
    case 0: p.kind = chance(rng, 0.5) ? Pred::True : Pred::False; return p;
    case 1: return random_cmp(rng, Where::Case);
    case 2: return random_cmp(rng, Where::First);
    case 3: return random_cmp(rng, Where::Last);
    case 4: return random_cmp(rng, Where::At);
    case 5:
    case 6:
      p.kind = Pred::Length;
      p.op = random_count_op(rng);
      p.number = pick(rng, 0, 6);
      return p;
    case 7:
      p.kind = Pred::Duration;
      p.op = random_count_op(rng);
      p.number = pick(rng, 0, 10) * 60000;
      return p;
    default:
      p.kind = Pred::VariantFreq;
      p.classifier = random_classifier(rng);
      p.op = random_count_op(rng);
      p.number = pick(rng, 0, 3);
      return p;
  }
}

Pred random_event_pred(std::mt19937_64& rng, int depth) {
  if (depth > 0 && chance(rng, 0.35)) {
    return combine(rng, depth, [](std::mt19937_64& r, int d) { return random_event_pred(r, d); });
  }
  Pred p;
  switch (pick(rng, 0, 6)) {
    case 0: p.kind = chance(rng, 0.5) ? Pred::True : Pred::False; return p;
    case 1:
    case 2:
    case 3: return random_cmp(rng, Where::Event);
    case 4:
    case 5:
      p.kind = Pred::LogFreq;
      p.classifier = random_classifier(rng);
      p.op = random_count_op(rng);
      p.number = pick(rng, 0, 6);
      return p;
    default:
      p.kind = Pred::LastOcc;
      p.classifier = random_classifier(rng);
      return p;
  }
}

Agg random_agg(std::mt19937_64& rng) {
  Agg a;
  a.grouping = random_classifier(rng);
  a.policy = static_cast<Agg::Policy>(pick(rng, 0, 2));
  a.stamp = static_cast<Agg::Stamp>(pick(rng, 0, 2));
  for (const auto& name : kAttrs) {
    if (chance(rng, 0.3)) a.collect.push_back(name);
  }
  return a;
}

std::vector<Step> random_stack(std::mt19937_64& rng) {
  std::vector<Step> steps;
  for (long i = pick(rng, 0, 3); i > 0; --i) {
    Step s;
    s.kind = static_cast<Step::Kind>(pick(rng, 0, 2));
    if (s.kind == Step::Select) s.pred = random_case_pred(rng);
    if (s.kind == Step::Project) s.pred = random_event_pred(rng);
    if (s.kind == Step::Aggregate) s.agg = random_agg(rng);
    steps.push_back(s);
  }
  return steps;
}

// --- bridges -----------------------------------------------------------------

evlog::EventTable to_table(const std::vector<Ev>& rows) {
  std::vector<evlog::Event> events;
  for (const auto& r : rows) {
    evlog::AttributeMap attrs;
    attrs.emplace("time", evlog::AttributeValue::time({r.time}));
    for (const auto& [k, v] : r.vals) attrs.emplace(k, evlog::AttributeValue::integer(v.num));
    events.push_back(evlog::Event::make(r.row, std::move(attrs)));
  }
  return evlog::EventTable(std::move(events), "b", {"id", "time", "a", "b", "c"});
}

namespace {

Val from_value(const evlog::AttributeValue& v) {
  if (const auto* s = v.as_set()) {
    Val out{true, 0, {}};
    for (const auto& m : *s) out.members.insert(static_cast<long>(*m.as_int()));
    return out;
  }
  return Val{false, static_cast<long>(*v.as_int()), {}};
}

evlog::CompareOp op_of(Op op) { return static_cast<evlog::CompareOp>(static_cast<int>(op)); }

}  // namespace

Log from_library(const evlog::StructuredEventLog& log) {
  Log out;
  out.uncorrelated = log.uncorrelated_events();
  for (const auto& c : log.cases()) {
    Cs cs;
    cs.id = static_cast<long>(*c.id.as_int());
    for (const auto& e : c.trace) {
      Ev ev;
      ev.row = e.index;
      ev.time = e.time().millis;
      for (const auto& [k, v] : e.attrs) {
        if (k != "time") ev.vals[k] = from_value(v);
      }
      cs.trace.push_back(ev);
    }
    for (const auto& [k, v] : c.case_attrs) {
      if (k == "time") {
        cs.time_is_case_attr = true;
      } else {
        cs.case_attrs[k] = from_value(v);
      }
    }
    out.cases.push_back(cs);
  }
  return out;
}

evlog::Predicate to_library(const Pred& p) {
  namespace n = evlog::node;
  std::vector<evlog::Predicate> args;
  for (const auto& a : p.args) args.push_back(to_library(a));
  switch (p.kind) {
    case Pred::True: return n::Constant{true};
    case Pred::False: return n::Constant{false};
    case Pred::And: return n::And{args};
    case Pred::Or: return n::Or{args};
    case Pred::Not: return n::Not{args};
    case Pred::Cmp: {
      std::vector<evlog::AttributeValue> operands;
      for (long x : p.operands) operands.push_back(evlog::AttributeValue::integer(x));
      return n::Compare{static_cast<evlog::Scope>(static_cast<int>(p.where)), p.attr, p.position,
                        op_of(p.op), operands};
    }
    case Pred::Length: return n::TraceLength{op_of(p.op), p.number};
    case Pred::Duration: return n::Duration{op_of(p.op), p.number};
    case Pred::VariantFreq:
      return n::VariantFrequency{evlog::Classifier(p.classifier), op_of(p.op), p.number};
    case Pred::LogFreq:
      return n::LogFrequency{evlog::Classifier(p.classifier), op_of(p.op), p.number};
    case Pred::LastOcc: return n::LastOccurrence{evlog::Classifier(p.classifier)};
  }
  return n::Constant{true};
}

evlog::AggregationSpec to_library(const Agg& a) {
  evlog::AggregationSpec spec{evlog::Classifier(a.grouping)};
  spec.policy = static_cast<evlog::ReplacementPolicy>(static_cast<int>(a.policy));
  spec.timestamp = static_cast<evlog::MergeTimestamp>(static_cast<int>(a.stamp));
  spec.collect = a.collect;
  return spec;
}

evlog::FilterStack to_library(const std::vector<Step>& steps) {
  evlog::FilterStack stack;
  for (const auto& s : steps) {
    if (s.kind == Step::Select) stack.steps.emplace_back(evlog::SelectStep{to_library(s.pred)});
    if (s.kind == Step::Project) stack.steps.emplace_back(evlog::ProjectStep{to_library(s.pred)});
    if (s.kind == Step::Aggregate) stack.steps.emplace_back(evlog::AggregateStep{to_library(s.agg)});
  }
  return stack;
}

std::string describe(const Log& log) {
  std::ostringstream os;
  auto val = [&](const Val& v) {
    if (!v.is_set) {
      os << v.num;
      return;
    }
    os << '{';
    for (long m : v.members) os << m << ' ';
    os << '}';
  };
  os << "uncorrelated=" << log.uncorrelated << '\n';
  for (const auto& c : log.cases) {
    os << "case " << c.id << (c.time_is_case_attr ? " [time]" : "") << " attrs:";
    for (const auto& [k, v] : c.case_attrs) {
      os << ' ' << k << '=';
      val(v);
    }
    os << "\n ";
    for (const auto& e : c.trace) {
      os << " e" << e.row << "@" << e.time / 60000 << '(';
      for (const auto& [k, v] : e.vals) {
        os << k << '=';
        val(v);
        os << ' ';
      }
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace oracle
