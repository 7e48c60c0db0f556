// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ccard/encode.hpp"
#include "ccard/errors.hpp"
#include "ccard/gac.hpp"
#include "test_util.hpp"

using namespace ccard;
using namespace ccard::testutil;

namespace {

EncodingArtifact make(ConstraintKind kind, int n, int k, Family family, ConditionalMode mode) {
  VarPool pool;
  return encode({kind, n, k, mode != ConditionalMode::None}, {family, mode}, pool);
}

std::vector<int> codes(const std::vector<Lit>& lits) {
  std::vector<int> out;
  for (Lit l : lits) out.push_back(l.code);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("oracle entailed literals") {
  // conditional AMO over three inputs: vars x1..x3 = 1..3, y = 4
  ConstraintSpec amo{ConstraintKind::AtMostK, 3, 1, true};
  SUBCASE("y and one true input force the others false") {
    OracleResult r = oracle_entailed_literals(amo, {pos(4), pos(1)});
    CHECK_FALSE(r.unsat);
    CHECK(codes(r.entailed) == std::vector<int>{-3, -2});
  }
  SUBCASE("two true inputs force -y") {
    OracleResult r = oracle_entailed_literals(amo, {pos(1), pos(2)});
    CHECK_FALSE(r.unsat);
    CHECK(codes(r.entailed) == std::vector<int>{-4});
  }
  SUBCASE("three false inputs entail -y for an atleast constraint") {
    ConstraintSpec alk{ConstraintKind::AtLeastK, 6, 4, true};
    OracleResult r = oracle_entailed_literals(alk, {neg(1), neg(2), neg(3)});
    CHECK_FALSE(r.unsat);
    CHECK(codes(r.entailed) == std::vector<int>{-7});
  }
  SUBCASE("overfull assignment under y is unsat") {
    OracleResult r = oracle_entailed_literals(amo, {pos(4), pos(1), pos(2)});
    CHECK(r.unsat);
  }
  SUBCASE("entailment respects input permutations") {
    std::mt19937 rng(11);
    ConstraintSpec spec{ConstraintKind::AtMostK, 6, 2, true};
    for (int iter = 0; iter < 40; ++iter) {
      std::vector<int> perm{1, 2, 3, 4, 5, 6};
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Lit> rho, rho_perm;
      for (int v = 1; v <= 6; ++v) {
        int roll = static_cast<int>(rng() % 3);
        if (roll == 0) continue;
        Lit l = roll == 1 ? pos(v) : neg(v);
        rho.push_back(l);
        int pv = perm[static_cast<std::size_t>(v - 1)];
        rho_perm.push_back(l.positive() ? pos(pv) : neg(pv));
      }
      OracleResult a = oracle_entailed_literals(spec, rho);
      OracleResult b = oracle_entailed_literals(spec, rho_perm);
      REQUIRE(a.unsat == b.unsat);
      if (a.unsat) continue;
      std::vector<int> mapped;
      for (Lit l : a.entailed) {
        int v = l.var();
        int pv = v <= 6 ? perm[static_cast<std::size_t>(v - 1)] : v;
        mapped.push_back(l.positive() ? pv : -pv);
      }
      std::sort(mapped.begin(), mapped.end());
      CHECK(mapped == codes(b.entailed));
    }
  }
}

TEST_CASE("check_gac verdicts") {
  SUBCASE("gac seqcounter amo passes up to n=6") {
    for (int n = 3; n <= 6; ++n) {
      EncodingArtifact art = make(ConstraintKind::AtMostK, n, 1, Family::SeqCounter,
                                  ConditionalMode::GacSubset);
      GacReport rep = check_gac(art);
      CHECK(rep.pass);
      CHECK(rep.counterexamples.empty());
    }
  }
  SUBCASE("naive seqcounter amo fails with the documented witness") {
    EncodingArtifact art = make(ConstraintKind::AtMostK, 3, 1, Family::SeqCounter,
                                ConditionalMode::NaiveAllClauses);
    GacReport rep = check_gac(art);
    CHECK_FALSE(rep.pass);
    bool found = false;
    for (const auto& cex : rep.counterexamples) {
      if (cex.kind != GacCounterexample::Kind::MissedLiteral) continue;
      if (codes(cex.rho) == std::vector<int>{1, 3} && cex.missed.code == -4) found = true;
    }
    CHECK(found);
  }
  SUBCASE("naive sortnet fails at n=4 k=2") {
    EncodingArtifact art = make(ConstraintKind::AtMostK, 4, 2, Family::SortNet,
                                ConditionalMode::NaiveAllClauses);
    CHECK_FALSE(check_gac(art).pass);
  }
  SUBCASE("naive pigeonhole fails at n=6 k=4") {
    EncodingArtifact art = make(ConstraintKind::AtLeastK, 6, 4, Family::PigeonHole,
                                ConditionalMode::NaiveAllClauses);
    CHECK_FALSE(check_gac(art).pass);
  }
  SUBCASE("naive pairwise still passes") {
    EncodingArtifact art = make(ConstraintKind::AtMostK, 5, 1, Family::Pairwise,
                                ConditionalMode::NaiveAllClauses);
    CHECK(check_gac(art).pass);
  }
  SUBCASE("basic pigeonhole is not gac") {
    EncodingArtifact art = make(ConstraintKind::AtLeastK, 3, 2, Family::PigeonHoleBasic,
                                ConditionalMode::None);
    CHECK_FALSE(check_gac(art).pass);
  }
  SUBCASE("cap is enforced") {
    EncodingArtifact art = make(ConstraintKind::AtMostK, 6, 2, Family::SeqCounter,
                                ConditionalMode::GacSubset);
    GacOptions opts;
    opts.max_n = 5;
    CHECK_THROWS_AS(check_gac(art, opts), TooLarge);
  }
  SUBCASE("counterexample list is capped") {
    EncodingArtifact art = make(ConstraintKind::AtLeastK, 6, 4, Family::PigeonHole,
                                ConditionalMode::NaiveAllClauses);
    GacReport rep = check_gac(art);
    CHECK_FALSE(rep.pass);
    CHECK(rep.counterexamples.size() == 32);

    GacOptions few;
    few.max_counterexamples = 5;
    CHECK(check_gac(art, few).counterexamples.size() == 5);
  }
  SUBCASE("single-threaded and parallel sweeps agree") {
    EncodingArtifact art = make(ConstraintKind::AtMostK, 5, 1, Family::SeqCounter,
                                ConditionalMode::NaiveAllClauses);
    GacOptions one;
    one.threads = 1;
    GacOptions many;
    many.threads = 4;
    GacReport a = check_gac(art, one);
    GacReport b = check_gac(art, many);
    CHECK(a.pass == b.pass);
    CHECK(a.counterexamples.size() == b.counterexamples.size());
    for (std::size_t i = 0; i < a.counterexamples.size(); ++i)
      CHECK(codes(a.counterexamples[i].rho) == codes(b.counterexamples[i].rho));
  }
}

TEST_CASE("projected model counts") {
  SUBCASE("plain amk n=5 k=2 has 16 projections") {
    for (Family family : {Family::SeqCounter, Family::SortNet, Family::PigeonHole}) {
      EncodingArtifact art = make(ConstraintKind::AtMostK, 5, 2, family, ConditionalMode::None);
      CHECK(projected_model_count(art) == 16);
    }
  }
  SUBCASE("conditional amk n=5 k=2 has 48") {
    EncodingArtifact art = make(ConstraintKind::AtMostK, 5, 2, Family::SeqCounter,
                                ConditionalMode::GacSubset);
    CHECK(projected_model_count(art) == 48);
  }
  SUBCASE("conditional atleast n=4 k=4 has 17") {
    for (Family family : {Family::SeqCounter, Family::PigeonHole}) {
      EncodingArtifact art = make(ConstraintKind::AtLeastK, 4, 4, family,
                                  ConditionalMode::GacSubset);
      CHECK(projected_model_count(art) == 17);
    }
  }
}

TEST_CASE("compare_flavors aggregates the narrative") {
  SUBCASE("amo n=6") {
    ConstraintSpec spec{ConstraintKind::AtMostK, 6, 1, true};
    auto rows = compare_flavors(spec, {{Family::Pairwise, ConditionalMode::NaiveAllClauses},
                                       {Family::SeqCounter, ConditionalMode::NaiveAllClauses},
                                       {Family::SeqCounter, ConditionalMode::GacSubset}});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].pass);
    CHECK(rows[0].clauses == 15);
    CHECK_FALSE(rows[1].pass);
    CHECK(rows[2].pass);
    CHECK(to_line(rows[2]) == "seqcounter-gac,6,1,12,14,pass,0");
  }
  SUBCASE("amk n=6 k=3") {
    ConstraintSpec spec{ConstraintKind::AtMostK, 6, 3, true};
    auto rows = compare_flavors(spec, {{Family::SeqCounter, ConditionalMode::GacSubset},
                                       {Family::SortNet, ConditionalMode::GacSubset}});
    CHECK(rows[0].pass);
    CHECK(rows[1].pass);
  }
  SUBCASE("atleast n=6 k=4") {
    ConstraintSpec spec{ConstraintKind::AtLeastK, 6, 4, true};
    auto rows = compare_flavors(spec, {{Family::PigeonHole, ConditionalMode::GacSubset},
                                       {Family::PigeonHole, ConditionalMode::NaiveAllClauses}});
    CHECK(rows[0].pass);
    CHECK_FALSE(rows[1].pass);
  }
}
