#include <benchmark/benchmark.h>

#include "klc/cactus.hpp"

using namespace klc;

namespace {

struct Case {
  const char* type;
  const char* weights;
};

const Case kCases[] = {{"I2(8)", "s=1,t=2"}, {"B3", "t=2,s1=1,s2=1"}, {"H3", ""}, {"B4", "t=2,s1=1,s2=1,s3=1"}};

const Case& pick(const benchmark::State& state) { return kCases[state.range(0)]; }

void label(benchmark::State& state) {
  const auto& c = pick(state);
  state.SetLabel(std::string(c.type) + (*c.weights ? " " : "") + c.weights);
}

std::shared_ptr<HeckeAlgebra> algebra(const Case& c, std::size_t jobs = 1) {
  const auto system = CoxeterSystem::named(c.type);
  return std::make_shared<HeckeAlgebra>(CoxeterGroup::build(system), WeightFunction::parse(system, c.weights), jobs);
}

void BM_Enumerate(benchmark::State& state) {
  const auto system = CoxeterSystem::named(pick(state).type);
  for (auto _ : state) benchmark::DoNotOptimize(CoxeterGroup::build(system));
  label(state);
}

void BM_KlBasis(benchmark::State& state) {
  const auto& c = pick(state);
  const auto system = CoxeterSystem::named(c.type);
  const auto group = CoxeterGroup::build(system);
  const auto weights = WeightFunction::parse(system, c.weights);
  for (auto _ : state) HeckeAlgebra algebra(group, weights, state.range(1));
  label(state);
}

void BM_StructureTable(benchmark::State& state) {
  const auto& c = pick(state);
  for (auto _ : state) {
    state.PauseTiming();
    const auto a = algebra(c, state.range(1));
    state.ResumeTiming();
    benchmark::DoNotOptimize(&a->structure_table());
  }
  label(state);
}

void BM_Cells(benchmark::State& state) {
  const auto& c = pick(state);
  for (auto _ : state) {
    state.PauseTiming();
    const auto a = algebra(c);
    state.ResumeTiming();
    CellDecomposition cells(*a);
    benchmark::DoNotOptimize(&cells);
  }
  label(state);
}

void BM_MathasLusztig(benchmark::State& state) {
  const auto& c = pick(state);
  const auto system = CoxeterSystem::named(c.type);
  for (auto _ : state) {
    Workspace ws(system, WeightFunction::parse(system, c.weights));
    benchmark::DoNotOptimize(&ws.mathas_lusztig(system.all()));
  }
  label(state);
}

void BM_CactusRelations(benchmark::State& state) {
  const auto& c = pick(state);
  const auto system = CoxeterSystem::named(c.type);
  Workspace ws(system, WeightFunction::parse(system, c.weights));
  CactusAction action(ws);
  for (auto _ : state) benchmark::DoNotOptimize(action.verify_relations());
  label(state);
}

}  // namespace

BENCHMARK(BM_Enumerate)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KlBasis)->ArgsProduct({{0, 1, 2, 3}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructureTable)->ArgsProduct({{0, 1, 2}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cells)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MathasLusztig)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CactusRelations)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
