// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_MINING_HPP
#define CCARD_MINING_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ccard/cnf.hpp"
#include "ccard/enumerate.hpp"
#include "ccard/ratio.hpp"

namespace ccard {

// Transaction database: distinct item symbols in first-appearance order and
// one itemset per transaction. Transaction ids are the 1-based positions of
// the nonempty input lines.
struct TransactionDb {
  std::vector<std::string> items;
  std::vector<std::vector<int>> transactions;  // sorted item indices

  int num_items() const { return static_cast<int>(items.size()); }
  int num_transactions() const { return static_cast<int>(transactions.size()); }
  int index_of(const std::string& item) const;  // throws UnknownItem
  bool transaction_has(int t, int item) const;
};

// Whitespace-separated item tokens, one transaction per line; blank lines
// are skipped and item tokens are folded to lower case. Throws ParseError
// on an input without transactions.
TransactionDb load_db(std::istream& in);

int support(const TransactionDb& db, const std::vector<std::string>& itemset);
std::vector<int> cover(const TransactionDb& db, const std::vector<std::string>& itemset);

// Closedness per definition: no proper superset has equal support.
// Requires support >= 1.
bool is_closed(const TransactionDb& db, const std::vector<std::string>& itemset);

// Minimal-generator test of `candidate` against the itemset it generates:
// equal support and no smaller subset with that support. The empty candidate
// is a (minimal) generator exactly when the itemset's support is the whole
// database.
bool is_minimal_generator(const TransactionDb& db,
                          const std::vector<std::string>& candidate,
                          const std::vector<std::string>& of);

enum class MiningMode { AllValid, Closed, MinimalNonRedundant };
enum class AmoFlavor { GacSubset, NaiveAllClauses };

std::string to_string(MiningMode m);
std::string to_string(AmoFlavor f);

struct MiningParams {
  Ratio minsupp{1, 2};
  Ratio minconf{1, 2};
  MiningMode mode = MiningMode::AllValid;
  AmoFlavor amo_flavor = AmoFlavor::GacSubset;
};

struct MiningVarMap {
  std::vector<Var> x, y;  // per item: antecedent / consequent membership
  std::vector<Var> p, q;  // per transaction: covers X / covers X u Y
  Var g = 0;              // singleton-antecedent selector
  std::vector<Var> g_i;   // per transaction: minimal-generator witnesses
  std::vector<Var> amo_aux;
};

struct MiningEncoding {
  Cnf cnf;
  MiningVarMap vars;
  std::vector<DynamicConstraintPtr> dynamics;  // support and confidence bounds
};

// Clause part of the mining problem plus the dynamically-propagated support
// and confidence constraints. Throws DegenerateThreshold when minsupp
// exceeds the database size.
MiningEncoding encode_mining(const TransactionDb& db, const MiningParams& params,
                             VarPool& pool);

struct Rule {
  std::vector<std::string> antecedent;  // sorted lexicographically
  std::vector<std::string> consequent;
  Ratio support{0, 1};
  Ratio confidence{0, 1};

  bool operator==(const Rule& o) const {
    return antecedent == o.antecedent && consequent == o.consequent &&
           support == o.support && confidence == o.confidence;
  }
  // "{a} => {b,c} ; supp=3/6 ; conf=3/3"
  std::string str() const;
};

struct MiningLimits {
  std::optional<std::uint64_t> max_models;
  std::optional<std::chrono::milliseconds> max_time;
};

struct MiningResult {
  std::vector<Rule> rules;  // sorted lexicographically by (X, Y)
  EnumStats stats;
};

// SAT-based mining: enumerates the models of the encoding projected onto the
// (x, y) variables with X-then-Y branching and decodes them into rules with
// exact support/confidence recomputed from the database.
MiningResult mine(const TransactionDb& db, const MiningParams& params,
                  const MiningLimits& limits = {});

// Ground truth by exhaustive itemset enumeration (num_items <= 12,
// num_transactions <= 64; throws TooLarge beyond that).
std::vector<Rule> mine_oracle(const TransactionDb& db, const MiningParams& params);

}  // namespace ccard

#endif
