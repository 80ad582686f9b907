#include <benchmark/benchmark.h>

#include "recon/cp.hpp"
#include "recon/gen.hpp"
#include "recon/ls.hpp"
#include "recon/oracle.hpp"
#include "recon/satenc.hpp"

using namespace recon;

namespace {

Problem realistic(int n, std::uint32_t seed = 1) {
  return generate(GenSpec{n, 1.5, 1.5, seed});
}

Problem precedence_only(int n, std::uint32_t seed = 1) {
  return generate(GenSpec{n, 0.0, 1.5, seed});
}

void BM_Generate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint32_t seed = 0;
  for (auto _ : state) {
    Problem p = generate(GenSpec{n, 1.5, 1.5, seed++});
    benchmark::DoNotOptimize(p.precs.data());
  }
}
BENCHMARK(BM_Generate)->Arg(100)->Arg(1000);

void BM_RootPropagation(benchmark::State& state) {
  Problem p = realistic(static_cast<int>(state.range(0)));
  CpSolver solver(p);
  for (auto _ : state) {
    CpState s = solver.root_state();
    benchmark::DoNotOptimize(solver.propagate(s));
  }
}
BENCHMARK(BM_RootPropagation)->Arg(100)->Arg(500);

void BM_ProveOptimal(benchmark::State& state) {
  Problem p = realistic(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CpSolver solver(p);
    auto res = solver.solve();
    benchmark::DoNotOptimize(res.stats.best_value);
  }
}
BENCHMARK(BM_ProveOptimal)->Arg(50)->Arg(100)->Arg(200);

void BM_FirstSolution(benchmark::State& state) {
  Problem p = realistic(static_cast<int>(state.range(0)));
  CpConfig config;
  config.prove_optimality = false;
  for (auto _ : state) {
    CpSolver solver(p);
    auto res = solver.solve(config);
    benchmark::DoNotOptimize(res.stats.first_value);
  }
}
BENCHMARK(BM_FirstSolution)->Arg(100)->Arg(500)->Arg(1000);

void BM_Descent(benchmark::State& state) {
  Problem p = precedence_only(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto res = descent(p, LsParams{});
    benchmark::DoNotOptimize(res.stats.best_value);
  }
}
BENCHMARK(BM_Descent)->Arg(50)->Arg(100);

void BM_Tabu10nSquared(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Problem p = precedence_only(n);
  LsParams params;
  params.max_iterations = 10LL * n * n;
  for (auto _ : state) {
    auto res = tabu_search(p, params);
    benchmark::DoNotOptimize(res.stats.best_value);
  }
}
BENCHMARK(BM_Tabu10nSquared)->Arg(40)->Arg(50)->Arg(100);

void BM_Oracle(benchmark::State& state) {
  Problem p = realistic(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto res = brute_force(p);
    benchmark::DoNotOptimize(res.opt_value);
  }
}
BENCHMARK(BM_Oracle)->Arg(12)->Arg(16);

void BM_EncodeCnf(benchmark::State& state) {
  Rng rng(7);
  CnfFormula cnf;
  cnf.num_vars = 5;
  for (int c = 0; c < 8; ++c) {
    std::vector<Lit> clause;
    for (int k = 0; k < 3; ++k) clause.push_back({(c + k) % 5, k == 1});
    cnf.clauses.push_back(clause);
  }
  for (auto _ : state) {
    auto enc = encode(cnf);
    benchmark::DoNotOptimize(enc.first.precs.data());
  }
}
BENCHMARK(BM_EncodeCnf);

}  // namespace

BENCHMARK_MAIN();
