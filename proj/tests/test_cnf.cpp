// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ccard/cnf.hpp"
#include "ccard/dimacs.hpp"
#include "ccard/encode.hpp"
#include "ccard/errors.hpp"
#include "ccard/ratio.hpp"
#include "test_util.hpp"

using namespace ccard;
using namespace ccard::testutil;

TEST_CASE("clause normalization") {
  auto c = new_clause({pos(1), neg(2)});
  REQUIRE(c.has_value());
  CHECK(lit_set(*c) == LitSet{-2, 1});

  auto dup = new_clause({pos(1), pos(1)});
  REQUIRE(dup.has_value());
  CHECK(dup->size() == 1);

  CHECK_FALSE(new_clause({pos(1), neg(1)}).has_value());

  // idempotent under re-normalization
  auto again = new_clause(std::vector<Lit>(dup->lits()));
  CHECK(*again == *dup);
}

TEST_CASE("var pool names are injective and dense") {
  VarPool pool;
  Var x1 = pool.fresh("x[1]");
  Var x2 = pool.fresh("x[2]");
  CHECK(x1 == 1);
  CHECK(x2 == 2);
  CHECK(pool.name(x2) == "x[2]");
  CHECK_THROWS_AS(pool.fresh("x[1]"), std::invalid_argument);
}

TEST_CASE("dimacs writer: pairwise n=2") {
  VarPool pool;
  Var a = pool.fresh("x[1]"), b = pool.fresh("x[2]");
  EncodingArtifact art = encode_pairwise_amo(pool, {a, b}, std::nullopt, ConditionalMode::None);
  std::string text = dimacs_string(art);
  CHECK(text ==
        "c var 1 = x[1]\n"
        "c var 2 = x[2]\n"
        "p cnf 2 1\n"
        "-1 -2 0\n");
}

TEST_CASE("dimacs writer: empty formula") {
  EncodingArtifact art;
  std::string text = dimacs_string(art);
  CHECK(text == "p cnf 0 0\n");
}

TEST_CASE("dimacs writer: example phP(6,4) header") {
  VarPool pool;
  EncodingArtifact art = encode({ConstraintKind::AtLeastK, 6, 4, false},
                                {Family::PigeonHole, ConditionalMode::None}, pool);
  std::string text = dimacs_string(art);
  CHECK(text.find("p cnf 18 22\n") != std::string::npos);
}

TEST_CASE("dimacs reader basics") {
  SUBCASE("single unit clause") {
    std::istringstream in("p cnf 1 1\n1 0\n");
    Cnf cnf = read_dimacs(in);
    CHECK(cnf.num_vars() == 1);
    REQUIRE(cnf.num_clauses() == 1);
    CHECK(lit_set(cnf.clauses()[0]) == LitSet{1});
  }
  SUBCASE("literal out of range") {
    std::istringstream in("p cnf 1 1\n2 0\n");
    CHECK_THROWS_AS(read_dimacs(in), ParseError);
  }
  SUBCASE("missing header") {
    std::istringstream in("1 0\n");
    CHECK_THROWS_AS(read_dimacs(in), ParseError);
  }
  SUBCASE("clause count mismatch") {
    std::istringstream in("p cnf 1 2\n1 0\n");
    CHECK_THROWS_AS(read_dimacs(in), ParseError);
  }
  SUBCASE("comments are skipped") {
    std::istringstream in("c hello\np cnf 2 1\nc mid\n1 -2 0\n");
    Cnf cnf = read_dimacs(in);
    CHECK(cnf.num_clauses() == 1);
  }
}

TEST_CASE("dimacs round-trip preserves the clause multiset") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 50; ++iter) {
    VarPool pool;
    int n = 2 + static_cast<int>(rng() % 7);
    std::vector<Var> xs;
    for (int i = 1; i <= n; ++i) xs.push_back(pool.fresh("x[" + std::to_string(i) + "]"));
    EncodingArtifact art;
    art.cnf = random_cnf(rng, n, 3 + static_cast<int>(rng() % 12));
    art.inputs = xs;
    art.var_names = pool.names();
    art.spec = {ConstraintKind::AtMostK, n, 1, false};

    std::istringstream in(dimacs_string(art));
    Cnf back = read_dimacs(in);
    CHECK(clause_sets(back) == clause_sets(art.cnf));
    CHECK(back.num_vars() == art.cnf.num_vars());
  }
}

TEST_CASE("example conditional seqcounter round-trips") {
  VarPool pool;
  EncodingArtifact art = encode({ConstraintKind::AtMostK, 3, 2, true},
                                {Family::SeqCounter, ConditionalMode::GacSubset}, pool);
  std::istringstream in(dimacs_string(art));
  Cnf back = read_dimacs(in);
  CHECK(clause_sets(back) == clause_sets(art.cnf));
}

TEST_CASE("ratio parsing") {
  CHECK(parse_ratio("3/6") == Ratio{1, 2});
  CHECK(parse_ratio("50%") == Ratio{1, 2});
  CHECK(parse_ratio("1") == Ratio{1, 1});
  CHECK(parse_ratio("7/6") > Ratio{1, 1});
  CHECK_THROWS_AS(parse_ratio("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ratio("x"), std::invalid_argument);
  CHECK(Ratio{5, 6}.str() == "5/6");
  CHECK(Ratio{3, 3} == Ratio{1, 1});
}
