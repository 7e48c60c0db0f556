// SPDX-License-Identifier: Apache-2.0

#include "ccard/mining.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>

#include "ccard/encode.hpp"
#include "ccard/errors.hpp"

namespace ccard {

int TransactionDb::index_of(const std::string& item) const {
  for (int i = 0; i < num_items(); ++i)
    if (items[static_cast<std::size_t>(i)] == item) return i;
  throw UnknownItem("unknown item: " + item);
}

bool TransactionDb::transaction_has(int t, int item) const {
  const auto& tr = transactions[static_cast<std::size_t>(t)];
  return std::binary_search(tr.begin(), tr.end(), item);
}

TransactionDb load_db(std::istream& in) {
  TransactionDb db;
  std::map<std::string, int> index;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    std::vector<int> itemset;
    while (ls >> tok) {
      for (char& ch : tok) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      auto [it, fresh] = index.emplace(tok, db.num_items());
      if (fresh) db.items.push_back(tok);
      itemset.push_back(it->second);
    }
    if (itemset.empty()) continue;  // blank line, tids stay dense
    std::sort(itemset.begin(), itemset.end());
    itemset.erase(std::unique(itemset.begin(), itemset.end()), itemset.end());
    db.transactions.push_back(std::move(itemset));
  }
  if (db.transactions.empty()) throw ParseError(lineno, "no transactions in input");
  return db;
}

namespace {

std::vector<int> resolve(const TransactionDb& db, const std::vector<std::string>& itemset) {
  std::vector<int> idx;
  idx.reserve(itemset.size());
  for (const auto& item : itemset) idx.push_back(db.index_of(item));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

std::vector<int> cover_idx(const TransactionDb& db, const std::vector<int>& items) {
  std::vector<int> tids;
  for (int t = 0; t < db.num_transactions(); ++t) {
    bool all = true;
    for (int item : items)
      if (!db.transaction_has(t, item)) {
        all = false;
        break;
      }
    if (all) tids.push_back(t + 1);
  }
  return tids;
}

int support_idx(const TransactionDb& db, const std::vector<int>& items) {
  return static_cast<int>(cover_idx(db, items).size());
}

}  // namespace

int support(const TransactionDb& db, const std::vector<std::string>& itemset) {
  return support_idx(db, resolve(db, itemset));
}

std::vector<int> cover(const TransactionDb& db, const std::vector<std::string>& itemset) {
  return cover_idx(db, resolve(db, itemset));
}

bool is_closed(const TransactionDb& db, const std::vector<std::string>& itemset) {
  std::vector<int> base = resolve(db, itemset);
  int supp = support_idx(db, base);
  if (supp < 1) throw std::invalid_argument("closedness is defined for support >= 1");
  // A proper superset with equal support exists iff some one-item extension
  // keeps the support (supports only shrink with growth).
  for (int item = 0; item < db.num_items(); ++item) {
    if (std::binary_search(base.begin(), base.end(), item)) continue;
    std::vector<int> ext = base;
    ext.push_back(item);
    if (support_idx(db, ext) == supp) return false;
  }
  return true;
}

bool is_minimal_generator(const TransactionDb& db,
                          const std::vector<std::string>& candidate,
                          const std::vector<std::string>& of) {
  std::vector<int> cand = resolve(db, candidate);
  std::vector<int> whole = resolve(db, of);
  for (int item : cand)
    if (!std::binary_search(whole.begin(), whole.end(), item))
      throw std::invalid_argument("generator candidate must be a subset");
  int target = support_idx(db, whole);
  if (support_idx(db, cand) != target) return false;
  // Equal-support subsets propagate downward, so checking the immediate
  // subsets (including the empty set for singletons) is exhaustive.
  for (std::size_t drop = 0; drop < cand.size(); ++drop) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (i != drop) sub.push_back(cand[i]);
    if (support_idx(db, sub) == target) return false;
  }
  return true;
}

std::string to_string(MiningMode m) {
  switch (m) {
    case MiningMode::AllValid: return "all";
    case MiningMode::Closed: return "closed";
    case MiningMode::MinimalNonRedundant: return "mnr";
  }
  return "?";
}

std::string to_string(AmoFlavor f) {
  return f == AmoFlavor::GacSubset ? "gac" : "naive";
}

namespace {

void validate_params(const TransactionDb& db, const MiningParams& params) {
  if (params.minsupp.num <= 0 || params.minconf.num <= 0)
    throw std::invalid_argument("thresholds must be positive");
  if (params.minconf > Ratio{1, 1})
    throw std::invalid_argument("minconf must not exceed 1");
  if (params.minsupp > Ratio{1, 1})
    throw DegenerateThreshold("threshold exceeds database size: minsupp > " +
                              std::to_string(db.num_transactions()) + "/" +
                              std::to_string(db.num_transactions()));
}

std::vector<int> outside_items(const TransactionDb& db, int t) {
  std::vector<int> out;
  for (int item = 0; item < db.num_items(); ++item)
    if (!db.transaction_has(t, item)) out.push_back(item);
  return out;
}

}  // namespace

MiningEncoding encode_mining(const TransactionDb& db, const MiningParams& params,
                             VarPool& pool) {
  validate_params(db, params);
  const int n = db.num_items();
  const int m = db.num_transactions();
  MiningEncoding enc;
  MiningVarMap& vm = enc.vars;
  Cnf& cnf = enc.cnf;

  for (int a = 0; a < n; ++a) vm.x.push_back(pool.fresh("x[" + db.items[static_cast<std::size_t>(a)] + "]"));
  for (int a = 0; a < n; ++a) vm.y.push_back(pool.fresh("y[" + db.items[static_cast<std::size_t>(a)] + "]"));
  for (int t = 1; t <= m; ++t) vm.p.push_back(pool.fresh("p[" + std::to_string(t) + "]"));
  for (int t = 1; t <= m; ++t) vm.q.push_back(pool.fresh("q[" + std::to_string(t) + "]"));
  auto xv = [&](int a) { return vm.x[static_cast<std::size_t>(a)]; };
  auto yv = [&](int a) { return vm.y[static_cast<std::size_t>(a)]; };
  auto pv = [&](int t) { return vm.p[static_cast<std::size_t>(t)]; };
  auto qv = [&](int t) { return vm.q[static_cast<std::size_t>(t)]; };

  // Antecedent and consequent are nonempty and disjoint.
  {
    std::vector<Lit> xs, ys;
    for (int a = 0; a < n; ++a) xs.push_back(pos(xv(a)));
    for (int a = 0; a < n; ++a) ys.push_back(pos(yv(a)));
    cnf.add_clause(std::move(xs));
    cnf.add_clause(std::move(ys));
  }
  for (int a = 0; a < n; ++a) cnf.add_clause({neg(xv(a)), neg(yv(a))});

  // p[t] <-> X subset of transaction t; q[t] <-> X u Y subset of it.
  // Both directions are clausified: the closedness clauses use q positively.
  for (int t = 0; t < m; ++t) {
    std::vector<int> out = outside_items(db, t);
    std::vector<Lit> long_p{pos(pv(t))};
    for (int a : out) long_p.push_back(pos(xv(a)));
    cnf.add_clause(std::move(long_p));
    for (int a : out) cnf.add_clause({neg(xv(a)), neg(pv(t))});
  }
  for (int t = 0; t < m; ++t) {
    std::vector<int> out = outside_items(db, t);
    std::vector<Lit> long_q{pos(qv(t)), neg(pv(t))};
    for (int a : out) long_q.push_back(pos(yv(a)));
    cnf.add_clause(std::move(long_q));
    cnf.add_clause({pos(pv(t)), neg(qv(t))});
    for (int a : out) cnf.add_clause({neg(yv(a)), neg(qv(t))});
  }

  if (params.mode != MiningMode::AllValid) {
    // Closedness: an item kept by every covering transaction joins X u Y.
    for (int a = 0; a < n; ++a) {
      std::vector<Lit> c{pos(xv(a)), pos(yv(a))};
      for (int t = 0; t < m; ++t)
        if (!db.transaction_has(t, a)) c.push_back(pos(qv(t)));
      cnf.add_clause(std::move(c));
    }
  }

  if (params.mode == MiningMode::MinimalNonRedundant) {
    vm.g = pool.fresh("g");
    for (int t = 1; t <= m; ++t) vm.g_i.push_back(pool.fresh("g[" + std::to_string(t) + "]"));
    // Every antecedent item needs a witness transaction unless X is a
    // singleton: dropping the item must grow the cover.
    for (int a = 0; a < n; ++a) {
      std::vector<Lit> c{neg(xv(a)), pos(vm.g)};
      for (int t = 0; t < m; ++t)
        if (!db.transaction_has(t, a)) c.push_back(pos(vm.g_i[static_cast<std::size_t>(t)]));
      cnf.add_clause(std::move(c));
    }
    ConditionalMode amo_mode = params.amo_flavor == AmoFlavor::GacSubset
                                   ? ConditionalMode::GacSubset
                                   : ConditionalMode::NaiveAllClauses;
    for (int t = 0; t < m; ++t) {
      std::vector<Lit> ins;
      for (int a : outside_items(db, t)) ins.push_back(pos(xv(a)));
      auto aux = append_seqcounter_amo(cnf, pool, ins, vm.g_i[static_cast<std::size_t>(t)],
                                       amo_mode, "amo[" + std::to_string(t + 1) + "]");
      vm.amo_aux.insert(vm.amo_aux.end(), aux.begin(), aux.end());
    }
    // g -> exactly one antecedent item.
    {
      std::vector<Lit> ins;
      for (int a = 0; a < n; ++a) ins.push_back(pos(xv(a)));
      auto aux = append_seqcounter_amo(cnf, pool, ins, vm.g, ConditionalMode::GacSubset, "eo");
      vm.amo_aux.insert(vm.amo_aux.end(), aux.begin(), aux.end());
      std::vector<Lit> alo{neg(vm.g)};
      for (int a = 0; a < n; ++a) alo.push_back(pos(xv(a)));
      cnf.add_clause(std::move(alo));
    }
  }
  cnf.ensure_vars(pool.num_vars());

  // Support and confidence stay dynamic.
  std::int64_t need = (static_cast<std::int64_t>(m) * params.minsupp.num +
                       params.minsupp.den - 1) /
                      params.minsupp.den;  // ceil(m * minsupp)
  enc.dynamics.push_back(make_atleast_counter(vm.q, static_cast<int>(need)));
  enc.dynamics.push_back(make_confidence_constraint(vm.p, vm.q, params.minconf));
  return enc;
}

std::string Rule::str() const {
  auto items = [](const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += v[i];
    }
    return s + "}";
  };
  return items(antecedent) + " => " + items(consequent) + " ; supp=" + support.str() +
         " ; conf=" + confidence.str();
}

namespace {

std::vector<std::string> names_sorted(const TransactionDb& db, const std::vector<int>& idx) {
  std::vector<std::string> names;
  names.reserve(idx.size());
  for (int a : idx) names.push_back(db.items[static_cast<std::size_t>(a)]);
  std::sort(names.begin(), names.end());
  return names;
}

bool rule_order(const Rule& a, const Rule& b) {
  if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
  return a.consequent < b.consequent;
}

}  // namespace

MiningResult mine(const TransactionDb& db, const MiningParams& params,
                  const MiningLimits& limits) {
  VarPool pool;
  MiningEncoding enc = encode_mining(db, params, pool);
  const int n = db.num_items();

  EnumConfig cfg;
  cfg.projection = enc.vars.x;
  cfg.projection.insert(cfg.projection.end(), enc.vars.y.begin(), enc.vars.y.end());
  cfg.branch_order = cfg.projection;  // X first, then Y
  cfg.max_models = limits.max_models;
  cfg.max_time = limits.max_time;

  MiningResult result;
  result.stats = enumerate_models(
      enc.cnf, enc.dynamics, cfg, [&](const std::vector<Lit>& model) {
        std::vector<int> xs, ys;
        for (int a = 0; a < n; ++a) {
          if (model[static_cast<std::size_t>(a)].positive()) xs.push_back(a);
          if (model[static_cast<std::size_t>(n + a)].positive()) ys.push_back(a);
        }
        std::vector<int> both = xs;
        both.insert(both.end(), ys.begin(), ys.end());
        std::sort(both.begin(), both.end());
        int supp_xy = support_idx(db, both);
        int supp_x = support_idx(db, xs);
        Rule r;
        r.antecedent = names_sorted(db, xs);
        r.consequent = names_sorted(db, ys);
        r.support = Ratio{supp_xy, db.num_transactions()};
        r.confidence = Ratio{supp_xy, supp_x};
        result.rules.push_back(std::move(r));
      });
  std::sort(result.rules.begin(), result.rules.end(), rule_order);
  return result;
}

std::vector<Rule> mine_oracle(const TransactionDb& db, const MiningParams& params) {
  validate_params(db, params);
  const int n = db.num_items();
  const int m = db.num_transactions();
  if (n > 12) throw TooLarge("oracle mining capped at 12 items");
  if (m > 64) throw TooLarge("oracle mining capped at 64 transactions");

  // Covers as transaction bitmasks, supports for every itemset mask.
  std::vector<std::uint64_t> item_cover(static_cast<std::size_t>(n), 0);
  for (int t = 0; t < m; ++t)
    for (int a : db.transactions[static_cast<std::size_t>(t)])
      item_cover[static_cast<std::size_t>(a)] |= 1ull << t;
  const std::uint64_t all = m == 64 ? ~0ull : (1ull << m) - 1;
  const std::uint32_t masks = 1u << n;
  std::vector<std::uint64_t> cover_of(masks, all);
  std::vector<int> supp(masks, 0);
  for (std::uint32_t s = 1; s < masks; ++s) {
    std::uint32_t low = s & (~s + 1);
    cover_of[s] = cover_of[s ^ low] & item_cover[static_cast<std::size_t>(std::countr_zero(low))];
  }
  for (std::uint32_t s = 0; s < masks; ++s) supp[s] = std::popcount(cover_of[s]);

  auto valid = [&](std::uint32_t xm, std::uint32_t ym) {
    int sxy = supp[xm | ym];
    if (Ratio{sxy, m} < params.minsupp) return false;
    if (sxy == 0) return false;
    return Ratio{sxy, supp[xm]} >= params.minconf;
  };
  auto closed = [&](std::uint32_t s) {
    for (int a = 0; a < n; ++a) {
      std::uint32_t bit = 1u << a;
      if ((s & bit) == 0 && supp[s | bit] == supp[s]) return false;
    }
    return true;
  };
  // Definition-level redundancy: a different rule with the same support and
  // confidence, a sub-antecedent and a super-consequent. Rules keep both
  // sides nonempty.
  auto dominated = [&](std::uint32_t xm, std::uint32_t ym) {
    int sxy = supp[xm | ym];
    int sx = supp[xm];
    for (std::uint32_t xs = xm;; xs = (xs - 1) & xm) {  // all submasks of xm
      if (xs != 0 && supp[xs] == sx) {
        std::uint32_t free = static_cast<std::uint32_t>((masks - 1) & ~(xs | ym));
        for (std::uint32_t t = free;; t = (t - 1) & free) {
          std::uint32_t ys = ym | t;
          if (!(xs == xm && ys == ym) && supp[xs | ys] == sxy) return true;
          if (t == 0) break;
        }
      }
      if (xs == 0) break;
    }
    return false;
  };

  std::vector<Rule> rules;
  for (std::uint32_t xm = 1; xm < masks; ++xm) {
    std::uint32_t rest = static_cast<std::uint32_t>((masks - 1) & ~xm);
    for (std::uint32_t ym = rest; ym != 0; ym = (ym - 1) & rest) {
      if (!valid(xm, ym)) continue;
      if (params.mode != MiningMode::AllValid && !closed(xm | ym)) continue;
      if (params.mode == MiningMode::MinimalNonRedundant && dominated(xm, ym)) continue;
      std::vector<int> xs, ys;
      for (int a = 0; a < n; ++a) {
        if (xm & (1u << a)) xs.push_back(a);
        if (ym & (1u << a)) ys.push_back(a);
      }
      Rule r;
      r.antecedent = names_sorted(db, xs);
      r.consequent = names_sorted(db, ys);
      r.support = Ratio{supp[xm | ym], m};
      r.confidence = Ratio{supp[xm | ym], supp[xm]};
      rules.push_back(std::move(r));
    }
  }
  std::sort(rules.begin(), rules.end(), rule_order);
  return rules;
}

}  // namespace ccard
