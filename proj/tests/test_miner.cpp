// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "ccard/errors.hpp"
#include "ccard/mining.hpp"
#include "test_util.hpp"

using namespace ccard;
using namespace ccard::testutil;

namespace {

const Rule* find_rule(const std::vector<Rule>& rules, const std::vector<std::string>& x,
                      const std::vector<std::string>& y) {
  for (const Rule& r : rules)
    if (r.antecedent == x && r.consequent == y) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("load_db") {
  SUBCASE("table fixture") {
    TransactionDb db = table1_db();
    CHECK(db.num_transactions() == 6);
    CHECK(db.num_items() == 7);
  }
  SUBCASE("single line") {
    std::istringstream in("a\n");
    TransactionDb db = load_db(in);
    CHECK(db.num_transactions() == 1);
    CHECK(db.items == std::vector<std::string>{"a"});
  }
  SUBCASE("blank lines are skipped and tids stay dense") {
    std::istringstream in("a b\n\n\nb c\n");
    TransactionDb db = load_db(in);
    CHECK(db.num_transactions() == 2);
    CHECK(cover(db, {"b"}) == std::vector<int>{1, 2});
  }
  SUBCASE("case folding merges tokens") {
    std::istringstream in("A a B\n");
    TransactionDb db = load_db(in);
    CHECK(db.num_items() == 2);
  }
  SUBCASE("empty input is an error") {
    std::istringstream in("\n\n");
    CHECK_THROWS_AS(load_db(in), ParseError);
  }
}

TEST_CASE("support and cover on the fixture") {
  TransactionDb db = table1_db();
  CHECK(cover(db, {"c", "d"}) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(support(db, {"c", "d"}) == 5);
  CHECK(support(db, {"f"}) == 3);
  CHECK(support(db, {}) == 6);  // empty set covers everything
  CHECK_THROWS_AS(support(db, {"zzz"}), UnknownItem);
}

TEST_CASE("closedness and minimal generators") {
  TransactionDb db = table1_db();
  CHECK(is_closed(db, {"c", "d"}));
  CHECK_FALSE(is_closed(db, {"f"}));
  CHECK_FALSE(is_closed(db, {"a", "b"}));
  CHECK(is_closed(db, {"a", "b", "c", "d"}));

  CHECK(is_minimal_generator(db, {"a"}, {"a", "b", "c", "d"}));
  CHECK_FALSE(is_minimal_generator(db, {"a", "b"}, {"a", "b", "c", "d"}));
  // the empty set generates exactly the full-support itemsets
  CHECK(is_minimal_generator(db, {}, {"c"}));
  CHECK_FALSE(is_minimal_generator(db, {}, {"c", "d"}));
  // a full-support singleton is shadowed by the empty set
  CHECK_FALSE(is_minimal_generator(db, {"c"}, {"c"}));
}

TEST_CASE("encode_mining emits the documented clause shapes") {
  TransactionDb db = table1_db();
  MiningParams params;
  params.minsupp = Ratio{1, 6};
  params.minconf = Ratio{1, 2};
  params.mode = MiningMode::MinimalNonRedundant;
  VarPool pool;
  MiningEncoding enc = encode_mining(db, params, pool);
  auto sets = clause_sets(enc.cnf);
  auto has = [&](std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    return std::find(sets.begin(), sets.end(), lits) != sets.end();
  };
  const MiningVarMap& vm = enc.vars;
  auto x = [&](const std::string& s) { return vm.x[static_cast<std::size_t>(db.index_of(s))]; };
  auto y = [&](const std::string& s) { return vm.y[static_cast<std::size_t>(db.index_of(s))]; };

  // cover clauses of transaction 6 = {c, e}: outside items a, b, d, f, g
  int p6 = vm.p[5];
  CHECK(has({p6, x("a"), x("b"), x("d"), x("f"), x("g")}));
  for (const char* it : {"a", "b", "d", "f", "g"})
    CHECK(has({-x(it), -p6}));

  // closedness for item c (in every transaction): (x_c | y_c)
  CHECK(has({x("c"), y("c")}));

  // q -> p direction of the cover biconditional
  CHECK(has({vm.p[0], -vm.q[0]}));

  // dynamics: support and confidence
  CHECK(enc.dynamics.size() == 2);
}

TEST_CASE("mining the fixture database") {
  TransactionDb db = table1_db();

  SUBCASE("table rows appear with exact support and confidence") {
    MiningParams params;
    params.minsupp = Ratio{1, 6};
    params.minconf = Ratio{1, 100};
    MiningResult res = mine(db, params);
    const Rule* r1 = find_rule(res.rules, {"a"}, {"b"});
    REQUIRE(r1);
    CHECK(r1->support == Ratio{3, 6});
    CHECK(r1->confidence == Ratio{1, 1});
    const Rule* r3 = find_rule(res.rules, {"c"}, {"d"});
    REQUIRE(r3);
    CHECK(r3->support == Ratio{5, 6});
    CHECK(r3->confidence == Ratio{5, 6});
    const Rule* r4 = find_rule(res.rules, {"c", "d"}, {"e", "f", "g"});
    REQUIRE(r4);
    CHECK(r4->support == Ratio{2, 6});
    CHECK(r4->confidence == Ratio{2, 5});
  }

  SUBCASE("minimal non-redundant mode keeps the canonical example") {
    MiningParams params;
    params.minsupp = Ratio{3, 6};
    params.minconf = Ratio{1, 1};
    params.mode = MiningMode::MinimalNonRedundant;
    MiningResult res = mine(db, params);
    CHECK(find_rule(res.rules, {"a"}, {"b", "c", "d"}) != nullptr);
    CHECK(find_rule(res.rules, {"a"}, {"b"}) == nullptr);
  }

  SUBCASE("rule thresholds are inclusive") {
    MiningParams params;
    params.minsupp = Ratio{2, 6};
    params.minconf = Ratio{2, 5};
    MiningResult res = mine(db, params);
    CHECK(find_rule(res.rules, {"c", "d"}, {"e", "f", "g"}) != nullptr);
    params.minconf = Ratio{41, 100};  // just above 2/5
    res = mine(db, params);
    CHECK(find_rule(res.rules, {"c", "d"}, {"e", "f", "g"}) == nullptr);
  }

  SUBCASE("degenerate support threshold") {
    MiningParams params;
    params.minsupp = Ratio{7, 6};
    CHECK_THROWS_AS(mine(db, params), DegenerateThreshold);
  }
}

TEST_CASE("mined rules satisfy the definitions") {
  TransactionDb db = table1_db();
  MiningParams params;
  params.minsupp = Ratio{1, 6};
  params.minconf = Ratio{1, 100};
  params.mode = MiningMode::MinimalNonRedundant;
  MiningResult res = mine(db, params);
  REQUIRE_FALSE(res.rules.empty());
  for (const Rule& r : res.rules) {
    std::vector<std::string> whole = r.antecedent;
    whole.insert(whole.end(), r.consequent.begin(), r.consequent.end());
    CHECK(is_closed(db, whole));
    // antecedents are minimal: no immediate sub-antecedent has equal support
    if (r.antecedent.size() > 1) {
      int supp_x = support(db, r.antecedent);
      for (std::size_t drop = 0; drop < r.antecedent.size(); ++drop) {
        std::vector<std::string> sub;
        for (std::size_t i = 0; i < r.antecedent.size(); ++i)
          if (i != drop) sub.push_back(r.antecedent[i]);
        CHECK(support(db, sub) > supp_x);
      }
    }
    // exact ratios
    CHECK(r.support == Ratio{support(db, whole), db.num_transactions()});
    CHECK(r.confidence == Ratio{support(db, whole), support(db, r.antecedent)});
  }
}

TEST_CASE("oracle ground truth") {
  TransactionDb db = table1_db();

  SUBCASE("single-transaction database") {
    std::istringstream in("a b\n");
    TransactionDb tiny = load_db(in);
    MiningParams params;
    params.minsupp = Ratio{1, 1};
    params.minconf = Ratio{1, 1};
    std::vector<Rule> rules = mine_oracle(tiny, params);
    REQUIRE(rules.size() == 2);
    CHECK(find_rule(rules, {"a"}, {"b"}) != nullptr);
    CHECK(find_rule(rules, {"b"}, {"a"}) != nullptr);
  }

  SUBCASE("fixture rows at permissive thresholds") {
    MiningParams params;
    params.minsupp = Ratio{1, 6};
    params.minconf = Ratio{1, 100};
    std::vector<Rule> rules = mine_oracle(db, params);
    CHECK(find_rule(rules, {"a"}, {"b"}) != nullptr);
    CHECK(find_rule(rules, {"a"}, {"b", "c", "d"}) != nullptr);
    CHECK(find_rule(rules, {"c"}, {"d"}) != nullptr);
    CHECK(find_rule(rules, {"c", "d"}, {"e", "f", "g"}) != nullptr);
  }

  SUBCASE("miner matches the oracle on the fixture in every mode and flavor") {
    for (MiningMode mode :
         {MiningMode::AllValid, MiningMode::Closed, MiningMode::MinimalNonRedundant}) {
      for (AmoFlavor flavor : {AmoFlavor::GacSubset, AmoFlavor::NaiveAllClauses}) {
        MiningParams params;
        params.minsupp = Ratio{2, 6};
        params.minconf = Ratio{1, 3};
        params.mode = mode;
        params.amo_flavor = flavor;
        MiningResult res = mine(db, params);
        std::vector<Rule> expected = mine_oracle(db, params);
        CHECK(res.rules == expected);
      }
    }
  }
}

TEST_CASE("miner equals oracle on random databases") {
  std::mt19937 rng(4242);
  for (int iter = 0; iter < 12; ++iter) {
    int items = 3 + static_cast<int>(rng() % 4);
    int trans = 2 + static_cast<int>(rng() % 5);
    TransactionDb db = random_db(rng, items, trans, 0.5);
    MiningParams params;
    params.minsupp = Ratio{1 + static_cast<std::int64_t>(rng() % trans), trans};
    params.minconf = Ratio{1 + static_cast<std::int64_t>(rng() % 3), 3};
    params.mode = static_cast<MiningMode>(rng() % 3);
    params.amo_flavor = rng() % 2 ? AmoFlavor::GacSubset : AmoFlavor::NaiveAllClauses;
    MiningResult res = mine(db, params);
    std::vector<Rule> expected = mine_oracle(db, params);
    CHECK(res.rules == expected);
  }
}

TEST_CASE("rule formatting") {
  Rule r;
  r.antecedent = {"a"};
  r.consequent = {"b", "c", "d"};
  r.support = Ratio{3, 6};
  r.confidence = Ratio{3, 3};
  CHECK(r.str() == "{a} => {b,c,d} ; supp=3/6 ; conf=3/3");
}
