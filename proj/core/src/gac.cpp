// SPDX-License-Identifier: Apache-2.0

#include "ccard/gac.hpp"

#include <algorithm>
#include <thread>

#include "ccard/errors.hpp"
#include "ccard/propagate.hpp"

namespace ccard {

SemanticOracle::SemanticOracle(ConstraintSpec spec) : spec_(spec) {
  validate(spec_);
}

bool SemanticOracle::cardinality_met(int true_count) const {
  switch (spec_.kind) {
    case ConstraintKind::AtMostK: return true_count <= spec_.k;
    case ConstraintKind::AtLeastK: return true_count >= spec_.k;
    case ConstraintKind::ExactlyOne: return true_count == 1;
  }
  return false;
}

namespace {

// Trit per constraint slot: slots 0..n-1 are x1..xn, slot n is y (when
// conditional). 0 = unassigned, 1 = true, 2 = false.
struct SlotSweep {
  int n;
  bool conditional;
  int slots;

  explicit SlotSweep(const ConstraintSpec& spec)
      : n(spec.n), conditional(spec.conditional), slots(spec.n + (spec.conditional ? 1 : 0)) {}

  std::uint64_t total() const {
    std::uint64_t t = 1;
    for (int i = 0; i < slots; ++i) t *= 3;
    return t;
  }

  void decode(std::uint64_t index, std::vector<int>& trits) const {
    trits.assign(static_cast<std::size_t>(slots), 0);
    for (int i = 0; i < slots; ++i) {
      trits[static_cast<std::size_t>(i)] = static_cast<int>(index % 3);
      index /= 3;
    }
  }
};

struct SlotOracleResult {
  bool unsat = false;
  // For each slot: 0 nothing entailed / slot assigned, 1 entailed true,
  // 2 entailed false.
  std::vector<int> entailed;
};

// Brute force over all completions of the partial slot assignment.
SlotOracleResult slot_oracle(const SemanticOracle& oracle, const SlotSweep& sweep,
                             const std::vector<int>& trits) {
  SlotOracleResult res;
  res.entailed.assign(static_cast<std::size_t>(sweep.slots), 0);
  std::vector<int> open;
  int fixed_true_x = 0;
  for (int s = 0; s < sweep.slots; ++s) {
    int t = trits[static_cast<std::size_t>(s)];
    if (t == 0)
      open.push_back(s);
    else if (t == 1 && s < sweep.n)
      ++fixed_true_x;
  }
  int y_slot = sweep.conditional ? sweep.n : -1;
  bool fixed_y = y_slot >= 0 && trits[static_cast<std::size_t>(y_slot)] != 0
                     ? trits[static_cast<std::size_t>(y_slot)] == 1
                     : true;  // unconditioned specs behave as y = true

  if (open.size() >= 25) throw TooLarge("oracle completion sweep too large");
  std::vector<char> seen_true(static_cast<std::size_t>(sweep.slots), 0);
  std::vector<char> seen_false(static_cast<std::size_t>(sweep.slots), 0);
  bool any_sat = false;
  const std::uint32_t lim = 1u << open.size();
  for (std::uint32_t mask = 0; mask < lim; ++mask) {
    int true_x = fixed_true_x;
    bool y = fixed_y;
    for (std::size_t b = 0; b < open.size(); ++b) {
      bool val = (mask >> b) & 1u;
      if (open[b] == y_slot)
        y = val;
      else if (val)
        ++true_x;
    }
    if (!oracle.satisfied(true_x, y)) continue;
    any_sat = true;
    for (std::size_t b = 0; b < open.size(); ++b) {
      if ((mask >> b) & 1u)
        seen_true[static_cast<std::size_t>(open[b])] = 1;
      else
        seen_false[static_cast<std::size_t>(open[b])] = 1;
    }
  }
  if (!any_sat) {
    res.unsat = true;
    return res;
  }
  for (int s : open) {
    bool st = seen_true[static_cast<std::size_t>(s)];
    bool sf = seen_false[static_cast<std::size_t>(s)];
    if (st && !sf) res.entailed[static_cast<std::size_t>(s)] = 1;
    if (sf && !st) res.entailed[static_cast<std::size_t>(s)] = 2;
  }
  return res;
}

Var slot_var(const EncodingArtifact& art, int slot) {
  if (slot < static_cast<int>(art.inputs.size()))
    return art.inputs[static_cast<std::size_t>(slot)];
  return *art.condition;
}

}  // namespace

OracleResult oracle_entailed_literals(const ConstraintSpec& spec,
                                      const std::vector<Lit>& rho) {
  SemanticOracle oracle(spec);
  SlotSweep sweep(spec);
  std::vector<int> trits(static_cast<std::size_t>(sweep.slots), 0);
  for (Lit l : rho) {
    int v = l.var();
    if (v < 1 || v > sweep.slots)
      throw std::invalid_argument("rho variable out of constraint range");
    int& t = trits[static_cast<std::size_t>(v - 1)];
    int want = l.positive() ? 1 : 2;
    if (t != 0 && t != want)
      throw std::invalid_argument("rho is not fundamental");
    t = want;
  }
  SlotOracleResult slot = slot_oracle(oracle, sweep, trits);
  OracleResult res;
  res.unsat = slot.unsat;
  if (!slot.unsat) {
    for (int s = 0; s < sweep.slots; ++s) {
      int e = slot.entailed[static_cast<std::size_t>(s)];
      if (e == 1) res.entailed.push_back(pos(s + 1));
      if (e == 2) res.entailed.push_back(neg(s + 1));
    }
  }
  return res;
}

namespace {

struct SweepChunk {
  std::uint64_t begin, end;
  std::vector<GacCounterexample> counterexamples;
};

void sweep_range(const EncodingArtifact& art, const SemanticOracle& oracle,
                 const SlotSweep& sweep, int cap, SweepChunk& chunk) {
  Engine eng(art.cnf);
  bool root_bad = eng.propagate().has_value();
  std::vector<int> trits;
  std::vector<Lit> rho;
  for (std::uint64_t idx = chunk.begin; idx < chunk.end; ++idx) {
    sweep.decode(idx, trits);
    rho.clear();
    for (int s = 0; s < sweep.slots; ++s) {
      int t = trits[static_cast<std::size_t>(s)];
      if (t == 1) rho.push_back(pos(slot_var(art, s)));
      if (t == 2) rho.push_back(neg(slot_var(art, s)));
    }
    SlotOracleResult want = slot_oracle(oracle, sweep, trits);

    bool conflict = root_bad;
    if (!conflict) {
      eng.backtrack(0);
      eng.new_level();
      for (Lit l : rho)
        if (!eng.enqueue(l)) {
          conflict = true;
          break;
        }
      if (!conflict) conflict = eng.propagate().has_value();
    }

    auto report = [&](GacCounterexample::Kind kind, Lit missed) {
      if (static_cast<int>(chunk.counterexamples.size()) >= cap) return;
      chunk.counterexamples.push_back({rho, kind, missed});
    };
    if (want.unsat) {
      if (!conflict) report(GacCounterexample::Kind::MissedConflict, Lit{0});
      continue;
    }
    if (conflict) {
      report(GacCounterexample::Kind::SpuriousConflict, Lit{0});
      continue;
    }
    for (int s = 0; s < sweep.slots; ++s) {
      int e = want.entailed[static_cast<std::size_t>(s)];
      if (e == 0) continue;
      Var v = slot_var(art, s);
      Value got = eng.value(v);
      Value need = e == 1 ? Value::True : Value::False;
      if (got != need)
        report(GacCounterexample::Kind::MissedLiteral, e == 1 ? pos(v) : neg(v));
    }
  }
}

}  // namespace

GacReport check_gac(const EncodingArtifact& artifact, const GacOptions& opts) {
  const ConstraintSpec& spec = artifact.spec;
  if (spec.n > opts.max_n)
    throw TooLarge("gac sweep capped at n <= " + std::to_string(opts.max_n));
  SemanticOracle oracle(spec);
  SlotSweep sweep(spec);
  const std::uint64_t total = sweep.total();

  unsigned threads = opts.threads;
  if (threads == 0) threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  if (threads == 0) threads = 1;

  std::vector<SweepChunk> chunks(threads);
  std::uint64_t per = total / threads, rest = total % threads, at = 0;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t len = per + (t < rest ? 1 : 0);
    chunks[t].begin = at;
    chunks[t].end = at + len;
    at += len;
  }
  {
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
      pool.emplace_back([&, t] {
        sweep_range(artifact, oracle, sweep, opts.max_counterexamples, chunks[t]);
      });
    sweep_range(artifact, oracle, sweep, opts.max_counterexamples, chunks[0]);
    for (auto& th : pool) th.join();
  }

  GacReport report;
  report.checked_assignments = total;
  for (auto& chunk : chunks)
    for (auto& cex : chunk.counterexamples) {
      if (static_cast<int>(report.counterexamples.size()) >= opts.max_counterexamples) break;
      report.counterexamples.push_back(std::move(cex));
    }
  report.pass = report.counterexamples.empty();
  return report;
}

namespace {

// Does the current engine state extend to a full model? Plain recursive
// search over the unassigned variables.
bool extendable(Engine& eng, Var from) {
  Var v = 0;
  for (Var u = from; u <= eng.num_vars(); ++u)
    if (eng.value(u) == Value::Unassigned) {
      v = u;
      break;
    }
  if (v == 0) return true;
  for (Lit l : {pos(v), neg(v)}) {
    int base = eng.level();
    eng.new_level();
    eng.enqueue(l);
    bool ok = !eng.propagate().has_value() && extendable(eng, v + 1);
    eng.backtrack(base);
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<std::uint64_t> projected_models(const EncodingArtifact& artifact, int max_n) {
  const ConstraintSpec& spec = artifact.spec;
  if (spec.n > max_n)
    throw TooLarge("projected model sweep capped at n <= " + std::to_string(max_n));
  SlotSweep sweep(spec);
  std::vector<std::uint64_t> models;
  Engine eng(artifact.cnf);
  if (eng.propagate().has_value()) return models;
  const std::uint64_t lim = 1ull << sweep.slots;
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    eng.backtrack(0);
    eng.new_level();
    bool clash = false;
    for (int s = 0; s < sweep.slots && !clash; ++s) {
      Var v = slot_var(artifact, s);
      clash = !eng.enqueue((mask >> s) & 1ull ? pos(v) : neg(v));
    }
    if (clash || eng.propagate().has_value()) continue;
    if (extendable(eng, 1)) models.push_back(mask);
  }
  eng.backtrack(0);
  return models;
}

std::uint64_t projected_model_count(const EncodingArtifact& artifact, int max_n) {
  return projected_models(artifact, max_n).size();
}

std::string to_text(const GacReport& report, const EncodingArtifact& artifact) {
  auto lit_name = [&](Lit l) {
    return (l.positive() ? "" : "-") + artifact.name_of(l.var());
  };
  std::string out;
  out += "checked " + std::to_string(report.checked_assignments) + " partial assignments\n";
  for (const auto& cex : report.counterexamples) {
    out += "counterexample: [";
    for (std::size_t i = 0; i < cex.rho.size(); ++i) {
      if (i) out += " ";
      out += lit_name(cex.rho[i]);
    }
    out += "] ";
    switch (cex.kind) {
      case GacCounterexample::Kind::MissedConflict: out += "missed conflict"; break;
      case GacCounterexample::Kind::SpuriousConflict: out += "spurious conflict"; break;
      case GacCounterexample::Kind::MissedLiteral:
        out += "missed literal " + lit_name(cex.missed);
        break;
    }
    out += "\n";
  }
  out += std::string("GAC: ") + (report.pass ? "PASS" : "FAIL") + "\n";
  return out;
}

std::string to_line(const FlavorRow& row) {
  return to_string(row.flavor) + "," + std::to_string(row.n) + "," + std::to_string(row.k) +
         "," + std::to_string(row.vars) + "," + std::to_string(row.clauses) + "," +
         (row.pass ? "pass" : "fail") + "," + std::to_string(row.counterexamples);
}

std::vector<FlavorRow> compare_flavors(const ConstraintSpec& spec,
                                       const std::vector<EncodingFlavor>& flavors,
                                       const GacOptions& opts) {
  std::vector<FlavorRow> rows;
  for (EncodingFlavor flavor : flavors) {
    ConstraintSpec s = spec;
    s.conditional = flavor.mode != ConditionalMode::None;
    VarPool pool;
    EncodingArtifact art = encode(s, flavor, pool);
    GacReport rep = check_gac(art, opts);
    rows.push_back({flavor, s.n, s.k, art.cnf.num_vars(),
                    static_cast<long>(art.cnf.num_clauses()), rep.pass,
                    static_cast<int>(rep.counterexamples.size())});
  }
  return rows;
}

}  // namespace ccard
