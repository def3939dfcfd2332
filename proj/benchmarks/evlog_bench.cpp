#include <benchmark/benchmark.h>

#include <random>

#include "evlog/classifier.hpp"
#include "evlog/csv.hpp"
#include "evlog/log.hpp"
#include "evlog/preprocess.hpp"

namespace {

using namespace evlog;

// Synthetic order log: `cases` cases of 5..25 events over 8 activities.
EventTable synthetic(std::int64_t cases) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> len(5, 25);
  std::uniform_int_distribution<int> act(0, 7);
  std::uniform_int_distribution<int> lc(0, 1);
  std::vector<Event> events;
  std::int64_t t = 0;
  for (std::int64_t c = 0; c < cases; ++c) {
    for (int i = len(rng); i > 0; --i) {
      AttributeMap m;
      m.emplace("time", AttributeValue::time({t += 60000}));
      m.emplace("case", AttributeValue::integer(c));
      m.emplace("action", AttributeValue::text("activity " + std::to_string(act(rng))));
      m.emplace("life-cycle", AttributeValue::text(lc(rng) ? "start" : "complete"));
      events.push_back(Event::make(0, std::move(m)));
    }
  }
  std::shuffle(events.begin(), events.end(), rng);
  return EventTable(std::move(events), "case");
}

void BM_Extract(benchmark::State& state) {
  const auto table = synthetic(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extract_log(table, "case"));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}
BENCHMARK(BM_Extract)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SimpleLog(benchmark::State& state) {
  const auto log = extract_log(synthetic(state.range(0)), "case");
  const auto cl = Classifier::parse("action+life-cycle");
  for (auto _ : state) benchmark::DoNotOptimize(simple_log(log, cl));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(log.event_count()));
}
BENCHMARK(BM_SimpleLog)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ApplyStack(benchmark::State& state) {
  const auto log = extract_log(synthetic(state.range(0)), "case");
  const auto act = Classifier::parse("action");
  const FilterStack stack{{
      SelectStep{Predicate(node::TraceLength{CompareOp::Ge, 8})},
      ProjectStep{attr_cmp(Scope::Event, "life-cycle", CompareOp::Eq,
                           AttributeValue::text("complete"))},
      AggregateStep{AggregationSpec{act}},
      ProjectStep{Predicate(node::LogFrequency{act, CompareOp::Ge, 10})},
  }};
  for (auto _ : state) benchmark::DoNotOptimize(apply_stack(log, stack));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(log.event_count()));
}
BENCHMARK(BM_ApplyStack)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ParseCsv(benchmark::State& state) {
  const auto text = write_csv(synthetic(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parse_csv(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseCsv)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
