#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "easyvoice/textaccel/abbreviations.hpp"
#include "easyvoice/textaccel/dictionary.hpp"

namespace tx = easyvoice::textaccel;

namespace {

std::vector<tx::DictionaryEntry> random_entries(std::size_t n) {
  std::mt19937_64 rng(1);
  std::set<std::string> seen;
  std::vector<tx::DictionaryEntry> out;
  while (out.size() < n) {
    std::string w;
    for (auto len = 2 + rng() % 8; len > 0; --len) w += static_cast<char>('a' + rng() % 26);
    if (seen.insert(w).second) out.push_back({w, rng() % 1000000});
  }
  return out;
}

void BM_Complete(benchmark::State& state) {
  const tx::FrequencyDictionary dict(random_entries(static_cast<std::size_t>(state.range(0))));
  const std::vector<std::string> prefixes = {"", "a", "th", "qu", "str", "zzzz"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dict.complete(prefixes[i++ % prefixes.size()]));
  }
}
BENCHMARK(BM_Complete)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_BuildDictionary(benchmark::State& state) {
  const auto entries = random_entries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    tx::FrequencyDictionary dict(entries);
    benchmark::DoNotOptimize(dict.size());
  }
}
BENCHMARK(BM_BuildDictionary)->Arg(10000);

void BM_ExpandAbbreviations(benchmark::State& state) {
  tx::AbbreviationTable table;
  table.define("btw", "by the way");
  table.define("asap", "as soon as possible");
  table.define("idk", "I don't know");
  const std::string text = "btw I will call you asap, idk when exactly but btw it is fine.";
  for (auto _ : state) benchmark::DoNotOptimize(tx::expand_abbreviations(table, text));
}
BENCHMARK(BM_ExpandAbbreviations);

}  // namespace
