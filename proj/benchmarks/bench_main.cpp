// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "ccard/encode.hpp"
#include "ccard/gac.hpp"
#include "ccard/mining.hpp"
#include "ccard/propagate.hpp"

namespace {

using namespace ccard;

const char* kTable1 =
    "c d e f g\n"
    "c d e f g\n"
    "a b c d\n"
    "a b c d f\n"
    "a b c d\n"
    "c e\n";

TransactionDb table1() {
  std::istringstream in(kTable1);
  return load_db(in);
}

void BM_EncodeSeqCounterAmk(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = n / 2;
  for (auto _ : state) {
    VarPool pool;
    EncodingArtifact art =
        encode({ConstraintKind::AtMostK, n, k, true}, {Family::SeqCounter, ConditionalMode::GacSubset}, pool);
    benchmark::DoNotOptimize(art.cnf.num_clauses());
  }
}
BENCHMARK(BM_EncodeSeqCounterAmk)->Arg(8)->Arg(32)->Arg(128);

void BM_EncodeSortNet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    VarPool pool;
    EncodingArtifact art =
        encode({ConstraintKind::AtMostK, n, n / 2, true}, {Family::SortNet, ConditionalMode::GacSubset}, pool);
    benchmark::DoNotOptimize(art.cnf.num_clauses());
  }
}
BENCHMARK(BM_EncodeSortNet)->Arg(8)->Arg(32)->Arg(128);

void BM_EncodePigeonHole(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    VarPool pool;
    EncodingArtifact art =
        encode({ConstraintKind::AtLeastK, n, n / 2, true}, {Family::PigeonHole, ConditionalMode::GacSubset}, pool);
    benchmark::DoNotOptimize(art.cnf.num_clauses());
  }
}
BENCHMARK(BM_EncodePigeonHole)->Arg(8)->Arg(32)->Arg(64);

void BM_PropagateSeqCounter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  VarPool pool;
  EncodingArtifact art =
      encode({ConstraintKind::AtMostK, n, n / 2, true}, {Family::SeqCounter, ConditionalMode::GacSubset}, pool);
  std::mt19937 rng(7);
  for (auto _ : state) {
    std::vector<Lit> assumptions{pos(*art.condition)};
    for (Var v : art.inputs)
      if (rng() & 1u) assumptions.push_back(pos(v));
    PropResult res = propagate(art.cnf, assumptions);
    benchmark::DoNotOptimize(res.implied.size());
  }
}
BENCHMARK(BM_PropagateSeqCounter)->Arg(16)->Arg(64);

void BM_CheckGac(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  VarPool pool;
  EncodingArtifact art =
      encode({ConstraintKind::AtMostK, n, n / 2, true}, {Family::SeqCounter, ConditionalMode::GacSubset}, pool);
  for (auto _ : state) {
    GacReport rep = check_gac(art);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_CheckGac)->Arg(4)->Arg(6);

void BM_MineTable1(benchmark::State& state) {
  TransactionDb db = table1();
  MiningParams params;
  params.minsupp = Ratio{1, 6};
  params.minconf = Ratio{1, 100};
  params.mode = MiningMode::MinimalNonRedundant;
  params.amo_flavor = state.range(0) ? AmoFlavor::GacSubset : AmoFlavor::NaiveAllClauses;
  for (auto _ : state) {
    MiningResult res = mine(db, params);
    benchmark::DoNotOptimize(res.rules.size());
  }
}
BENCHMARK(BM_MineTable1)->Arg(1)->Arg(0);

}  // namespace

BENCHMARK_MAIN();
