#include <benchmark/benchmark.h>

#include "expsums/oracle.hpp"
#include "expsums/satotate.hpp"

using namespace expsums;

namespace {

// Primes near powers of ten; the last one is past the root-table limit.
constexpr u64 kPrimes[] = {1009, 10007, 100003, 1000003};

void BM_s_k(benchmark::State& state) {
  const FieldTables field(OddPrime(static_cast<u64>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(s_k(field, 3, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_t_d(benchmark::State& state) {
  const OddPrime p(static_cast<u64>(state.range(0)));
  const FieldTables field(p);
  const Character chi = Character::quadratic(p);
  for (auto _ : state) benchmark::DoNotOptimize(t_d(field, chi, 4, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_kloosterman(benchmark::State& state) {
  const FieldTables field(OddPrime(static_cast<u64>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman(field, 3, 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_field_tables(benchmark::State& state) {
  const OddPrime p(static_cast<u64>(state.range(0)));
  for (auto _ : state) {
    FieldTables field(p);
    benchmark::DoNotOptimize(field);
  }
}

void BM_collect_angles(benchmark::State& state) {
  const FieldTables field(OddPrime(static_cast<u64>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(collect_angles(field, 1));
}

void BM_is_prime(benchmark::State& state) {
  u64 n = (u64{1} << 62) + 1;
  for (auto _ : state) benchmark::DoNotOptimize(is_prime(n += 2));
}

void primes(benchmark::internal::Benchmark* b) {
  for (u64 p : kPrimes) b->Arg(static_cast<std::int64_t>(p));
}

}  // namespace

BENCHMARK(BM_s_k)->Apply(primes);
BENCHMARK(BM_t_d)->Apply(primes);
BENCHMARK(BM_kloosterman)->Apply(primes);
BENCHMARK(BM_field_tables)->Apply(primes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_collect_angles)->Arg(1009)->Arg(10007)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_prime);

BENCHMARK_MAIN();
