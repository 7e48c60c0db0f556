// SPDX-License-Identifier: Apache-2.0

#include "ccard/encode.hpp"

#include <string>

#include "ccard/errors.hpp"

namespace ccard {

std::string to_string(Family f) {
  switch (f) {
    case Family::Pairwise: return "pairwise";
    case Family::SeqCounter: return "seqcounter";
    case Family::PigeonHole: return "pigeonhole";
    case Family::SortNet: return "sortnet";
    case Family::PigeonHoleBasic: return "pigeonhole-basic";
  }
  return "?";
}

std::string to_string(ConditionalMode m) {
  switch (m) {
    case ConditionalMode::None: return "plain";
    case ConditionalMode::NaiveAllClauses: return "naive";
    case ConditionalMode::GacSubset: return "gac";
  }
  return "?";
}

std::string to_string(EncodingFlavor f) {
  return to_string(f.family) + "-" + to_string(f.mode);
}

namespace {

std::string idx1(const std::string& base, int i) {
  return base + "[" + std::to_string(i) + "]";
}
std::string idx2(const std::string& base, int i, int j) {
  return base + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

// Appends `lits` (plus ~cond when guard is set) as one clause.
void emit(Cnf& cnf, std::vector<Lit> lits, std::optional<Var> cond, bool guard) {
  if (guard && cond) lits.push_back(neg(*cond));
  cnf.add_clause(std::move(lits));
}

}  // namespace

void append_pairwise_amo(Cnf& cnf, std::span<const Lit> inputs,
                         std::optional<Var> cond, ConditionalMode mode) {
  const int n = static_cast<int>(inputs.size());
  const bool guard = mode != ConditionalMode::None;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      emit(cnf, {~inputs[i], ~inputs[j]}, cond, guard);
}

std::vector<Var> append_seqcounter_amo(Cnf& cnf, VarPool& pool,
                                       std::span<const Lit> inputs,
                                       std::optional<Var> cond, ConditionalMode mode,
                                       const std::string& aux_prefix) {
  const int n = static_cast<int>(inputs.size());
  if (n <= 1) return {};
  const bool all = mode == ConditionalMode::NaiveAllClauses;
  const bool negs = mode != ConditionalMode::None;  // guard on the negative clauses
  std::vector<Var> p(static_cast<std::size_t>(n));  // 1-based, p[1]..p[n-1]
  for (int i = 1; i < n; ++i)
    p[static_cast<std::size_t>(i)] = pool.fresh(idx1(aux_prefix, i));
  auto chain = [&](int i) { return pos(p[static_cast<std::size_t>(i)]); };

  emit(cnf, {~inputs[0], chain(1)}, cond, all);
  for (int i = 2; i < n; ++i) {
    emit(cnf, {~inputs[static_cast<std::size_t>(i - 1)], chain(i)}, cond, all);
    emit(cnf, {~chain(i - 1), chain(i)}, cond, all);
    emit(cnf, {~inputs[static_cast<std::size_t>(i - 1)], ~chain(i - 1)}, cond, negs);
  }
  emit(cnf, {~inputs[static_cast<std::size_t>(n - 1)], ~chain(n - 1)}, cond, negs);
  return std::vector<Var>(p.begin() + 1, p.end());
}

std::vector<Var> append_seqcounter_amk(Cnf& cnf, VarPool& pool,
                                       std::span<const Lit> inputs, int k,
                                       std::optional<Var> cond, ConditionalMode mode,
                                       const std::string& aux_prefix) {
  const int n = static_cast<int>(inputs.size());
  if (k < 1 || k >= n) throw InvalidBound("seqcounter needs 1 <= k < n");
  const bool all = mode == ConditionalMode::NaiveAllClauses;
  const bool negs = mode != ConditionalMode::None;
  // s[i][j] = "at least j of the first i inputs are true", i in 1..n-1,
  // j in 1..k, allocated row-major.
  std::vector<std::vector<Var>> s(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    s[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(k) + 1, 0);
    for (int j = 1; j <= k; ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          pool.fresh(idx2(aux_prefix, i, j));
  }
  auto sum = [&](int i, int j) { return pos(s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]); };
  auto x = [&](int i) { return inputs[static_cast<std::size_t>(i - 1)]; };

  emit(cnf, {~x(1), sum(1, 1)}, cond, all);
  for (int j = 2; j <= k; ++j) emit(cnf, {~sum(1, j)}, cond, negs);
  for (int i = 2; i < n; ++i) {
    emit(cnf, {~x(i), sum(i, 1)}, cond, all);
    emit(cnf, {~sum(i - 1, 1), sum(i, 1)}, cond, all);
    for (int j = 2; j <= k; ++j) {
      emit(cnf, {~x(i), ~sum(i - 1, j - 1), sum(i, j)}, cond, all);
      emit(cnf, {~sum(i - 1, j), sum(i, j)}, cond, all);
    }
    emit(cnf, {~x(i), ~sum(i - 1, k)}, cond, negs);
  }
  emit(cnf, {~x(n), ~sum(n - 1, k)}, cond, negs);

  std::vector<Var> aux;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j <= k; ++j)
      aux.push_back(s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return aux;
}

std::vector<Var> append_pigeonhole_basic_alk(Cnf& cnf, VarPool& pool,
                                             std::span<const Lit> inputs, int k) {
  const int n = static_cast<int>(inputs.size());
  if (k < 1 || k > n) throw InvalidBound("pigeonhole-basic needs 1 <= k <= n");
  // p[j][i]: pigeon j (1..k) sits in hole i (1..n).
  std::vector<std::vector<Var>> p(static_cast<std::size_t>(k) + 1);
  for (int j = 1; j <= k; ++j) {
    p[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i)
      p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = pool.fresh(idx2("p", j, i));
  }
  auto hole = [&](int j, int i) { return pos(p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]); };

  // A hole taken by any pigeon carries a true input.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= k; ++j)
      cnf.add_clause({~hole(j, i), inputs[static_cast<std::size_t>(i - 1)]});
  // Every pigeon sits somewhere; no two pigeons share a hole.
  for (int j = 1; j <= k; ++j) {
    std::vector<Lit> somewhere;
    for (int i = 1; i <= n; ++i) somewhere.push_back(hole(j, i));
    cnf.add_clause(std::move(somewhere));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= k; ++j)
      for (int j2 = j + 1; j2 <= k; ++j2)
        cnf.add_clause({~hole(j, i), ~hole(j2, i)});

  std::vector<Var> aux;
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= n; ++i)
      aux.push_back(p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  return aux;
}

std::vector<Var> append_pigeonhole_alk(Cnf& cnf, VarPool& pool,
                                       std::span<const Lit> inputs, int k,
                                       std::optional<Var> cond, ConditionalMode mode) {
  const int n = static_cast<int>(inputs.size());
  if (k < 1 || k > n) throw InvalidBound("pigeonhole needs 1 <= k <= n");
  const int w = n - k + 1;
  const bool all = mode == ConditionalMode::NaiveAllClauses;
  const bool positives = mode != ConditionalMode::None;  // guard on the positive clauses
  std::vector<std::vector<Var>> p(static_cast<std::size_t>(k) + 1);
  for (int i = 1; i <= k; ++i) {
    p[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(w) + 1, 0);
    for (int j = 1; j <= w; ++j)
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pool.fresh(idx2("p", i, j));
  }
  auto pij = [&](int i, int j) { return pos(p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]); };

  // Positive clauses: pigeon i sits in one of its w allowed slots.
  for (int i = 1; i <= k; ++i) {
    std::vector<Lit> slots;
    for (int j = 1; j <= w; ++j) slots.push_back(pij(i, j));
    emit(cnf, std::move(slots), cond, positives);
  }
  // Slot (i,j) implies input x[i+j-1].
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= w; ++j)
      emit(cnf, {inputs[static_cast<std::size_t>(i + j - 2)], ~pij(i, j)}, cond, all);
  // Symmetry-broken ordering between consecutive pigeons.
  for (int i = 1; i < k; ++i)
    for (int j = 1; j < w; ++j) {
      std::vector<Lit> ordered{~pij(i + 1, j)};
      for (int l = 1; l <= j; ++l) ordered.push_back(pij(i, l));
      emit(cnf, std::move(ordered), cond, all);
    }

  std::vector<Var> aux;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= w; ++j)
      aux.push_back(p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return aux;
}

namespace {

std::vector<Var> append_sortnet_amk_clauses(Cnf& cnf, VarPool& pool,
                                            std::span<const Lit> inputs, int k,
                                            std::optional<Var> cond, ConditionalMode mode) {
  const int n = static_cast<int>(inputs.size());
  if (k < 0 || k >= n) throw InvalidBound("sortnet needs 0 <= k < n");
  std::optional<Var> guard_net =
      mode == ConditionalMode::NaiveAllClauses ? cond : std::nullopt;
  SortingNetwork net = append_sorting_network(cnf, pool, inputs, guard_net);
  std::vector<Lit> bound{~net.outputs[static_cast<std::size_t>(k)]};
  emit(cnf, std::move(bound), cond, mode != ConditionalMode::None);
  return net.auxiliaries;
}

struct Allocated {
  std::vector<Var> xs;
  std::optional<Var> y;
  std::vector<Lit> pos_lits;
  std::vector<Lit> neg_lits;
};

Allocated allocate_frame(VarPool& pool, int n, bool conditional) {
  Allocated a;
  for (int i = 1; i <= n; ++i) a.xs.push_back(pool.fresh(idx1("x", i)));
  if (conditional) a.y = pool.fresh("y");
  for (Var v : a.xs) {
    a.pos_lits.push_back(pos(v));
    a.neg_lits.push_back(neg(v));
  }
  return a;
}

EncodingArtifact finish(VarPool& pool, Cnf cnf, Allocated a,
                        std::vector<Var> aux, ConstraintSpec spec) {
  cnf.ensure_vars(pool.num_vars());
  EncodingArtifact art;
  art.cnf = std::move(cnf);
  art.inputs = std::move(a.xs);
  art.condition = a.y;
  art.auxiliaries = std::move(aux);
  art.var_names = pool.names();
  art.spec = spec;
  art.validate();
  return art;
}

ConstraintSpec spec_for(ConstraintKind kind, int n, int k, bool conditional) {
  ConstraintSpec s{kind, n, k, conditional};
  validate(s);
  return s;
}

}  // namespace

EncodingArtifact encode_pairwise_amo(VarPool& pool, const std::vector<Var>& xs,
                                     std::optional<Var> cond, ConditionalMode mode) {
  Allocated a;
  a.xs = xs;
  a.y = cond;
  for (Var v : xs) a.pos_lits.push_back(pos(v));
  Cnf cnf;
  append_pairwise_amo(cnf, a.pos_lits, cond, mode);
  return finish(pool, std::move(cnf), std::move(a), {},
                spec_for(ConstraintKind::AtMostK, static_cast<int>(xs.size()), 1,
                         cond.has_value()));
}

EncodingArtifact encode_seqcounter_amo(VarPool& pool, const std::vector<Var>& xs,
                                       std::optional<Var> cond, ConditionalMode mode) {
  Allocated a;
  a.xs = xs;
  a.y = cond;
  for (Var v : xs) a.pos_lits.push_back(pos(v));
  Cnf cnf;
  auto aux = append_seqcounter_amo(cnf, pool, a.pos_lits, cond, mode);
  return finish(pool, std::move(cnf), std::move(a), std::move(aux),
                spec_for(ConstraintKind::AtMostK, static_cast<int>(xs.size()), 1,
                         cond.has_value()));
}

EncodingArtifact encode_seqcounter_amk(VarPool& pool, const std::vector<Var>& xs, int k,
                                       std::optional<Var> cond, ConditionalMode mode) {
  Allocated a;
  a.xs = xs;
  a.y = cond;
  for (Var v : xs) a.pos_lits.push_back(pos(v));
  Cnf cnf;
  auto aux = append_seqcounter_amk(cnf, pool, a.pos_lits, k, cond, mode);
  return finish(pool, std::move(cnf), std::move(a), std::move(aux),
                spec_for(ConstraintKind::AtMostK, static_cast<int>(xs.size()), k,
                         cond.has_value()));
}

EncodingArtifact encode_pigeonhole_basic_alk(VarPool& pool, const std::vector<Var>& xs,
                                             int k) {
  Allocated a;
  a.xs = xs;
  for (Var v : xs) a.pos_lits.push_back(pos(v));
  Cnf cnf;
  auto aux = append_pigeonhole_basic_alk(cnf, pool, a.pos_lits, k);
  return finish(pool, std::move(cnf), std::move(a), std::move(aux),
                spec_for(ConstraintKind::AtLeastK, static_cast<int>(xs.size()), k, false));
}

EncodingArtifact encode_pigeonhole_alk(VarPool& pool, const std::vector<Var>& xs, int k,
                                       std::optional<Var> cond, ConditionalMode mode) {
  Allocated a;
  a.xs = xs;
  a.y = cond;
  for (Var v : xs) a.pos_lits.push_back(pos(v));
  Cnf cnf;
  auto aux = append_pigeonhole_alk(cnf, pool, a.pos_lits, k, cond, mode);
  return finish(pool, std::move(cnf), std::move(a), std::move(aux),
                spec_for(ConstraintKind::AtLeastK, static_cast<int>(xs.size()), k,
                         cond.has_value()));
}

std::pair<std::vector<Lit>, Cnf> build_sorting_network(VarPool& pool,
                                                       const std::vector<Var>& xs) {
  Cnf cnf;
  std::vector<Lit> in;
  for (Var v : xs) in.push_back(pos(v));
  SortingNetwork net = append_sorting_network(cnf, pool, in, std::nullopt);
  cnf.ensure_vars(pool.num_vars());
  return {net.outputs, std::move(cnf)};
}

EncodingArtifact encode_sortnet_amk(VarPool& pool, const std::vector<Var>& xs, int k,
                                    std::optional<Var> cond, ConditionalMode mode) {
  Allocated a;
  a.xs = xs;
  a.y = cond;
  for (Var v : xs) a.pos_lits.push_back(pos(v));
  Cnf cnf;
  auto aux = append_sortnet_amk_clauses(cnf, pool, a.pos_lits, k, cond, mode);
  return finish(pool, std::move(cnf), std::move(a), std::move(aux),
                spec_for(ConstraintKind::AtMostK, static_cast<int>(xs.size()), k,
                         cond.has_value()));
}

EncodingArtifact encode(const ConstraintSpec& spec_in, EncodingFlavor flavor, VarPool& pool) {
  ConstraintSpec spec = spec_in;
  if (spec.kind == ConstraintKind::ExactlyOne) spec.k = 1;
  validate(spec);
  if (spec.conditional != (flavor.mode != ConditionalMode::None))
    throw UnsupportedCombination(
        "conditional specs need naive/gac mode, unconditioned specs need plain mode");
  if (flavor.family == Family::PigeonHoleBasic && flavor.mode != ConditionalMode::None)
    throw UnsupportedCombination("pigeonhole-basic has no conditional form");

  const int n = spec.n;
  const int k = spec.k;
  Allocated a = allocate_frame(pool, n, spec.conditional);
  Cnf cnf;
  std::vector<Var> aux;
  // Clauses that are guarded whenever the constraint is conditional,
  // independent of the flavor's guard placement (degenerate cases, ALO).
  auto forced = [&](Lit l) {
    std::vector<Lit> c{l};
    if (a.y) c.push_back(neg(*a.y));
    cnf.add_clause(std::move(c));
  };

  // At-most part shared by AtMostK and ExactlyOne (k = 1).
  auto emit_amk = [&](std::span<const Lit> ins, int bound) {
    switch (flavor.family) {
      case Family::Pairwise:
        if (bound != 1)
          throw UnsupportedCombination("pairwise encodes only at-most-one bounds");
        append_pairwise_amo(cnf, ins, a.y, flavor.mode);
        break;
      case Family::SeqCounter:
        if (bound == 1)
          aux = append_seqcounter_amo(cnf, pool, ins, a.y, flavor.mode);
        else
          aux = append_seqcounter_amk(cnf, pool, ins, bound, a.y, flavor.mode);
        break;
      case Family::SortNet:
        aux = append_sortnet_amk_clauses(cnf, pool, ins, bound, a.y, flavor.mode);
        break;
      case Family::PigeonHole: {
        // sum(x) <= k  ==  sum(~x) >= n - k
        std::vector<Lit> flipped;
        for (Lit l : ins) flipped.push_back(~l);
        aux = append_pigeonhole_alk(cnf, pool, flipped, n - bound, a.y, flavor.mode);
        break;
      }
      case Family::PigeonHoleBasic: {
        std::vector<Lit> flipped;
        for (Lit l : ins) flipped.push_back(~l);
        aux = append_pigeonhole_basic_alk(cnf, pool, flipped, n - bound);
        break;
      }
    }
  };

  switch (spec.kind) {
    case ConstraintKind::AtMostK:
      if (k >= n) {
        // tautological, nothing to emit
      } else if (k == 0) {
        for (Lit l : a.neg_lits) forced(l);
      } else {
        emit_amk(a.pos_lits, k);
      }
      break;
    case ConstraintKind::AtLeastK:
      if (k == 0) {
        // tautological
      } else if (flavor.family == Family::PigeonHole) {
        aux = append_pigeonhole_alk(cnf, pool, a.pos_lits, k, a.y, flavor.mode);
      } else if (flavor.family == Family::PigeonHoleBasic) {
        aux = append_pigeonhole_basic_alk(cnf, pool, a.pos_lits, k);
      } else {
        // sum(x) >= k  ==  sum(~x) <= n - k for the at-most families.
        const int bound = n - k;
        if (bound == 0) {
          for (Lit l : a.pos_lits) forced(l);
        } else {
          emit_amk(a.neg_lits, bound);
        }
      }
      break;
    case ConstraintKind::ExactlyOne: {
      if (n > 1) emit_amk(a.pos_lits, 1);
      std::vector<Lit> alo = a.pos_lits;
      if (a.y) alo.push_back(neg(*a.y));
      cnf.add_clause(std::move(alo));
      break;
    }
  }
  return finish(pool, std::move(cnf), std::move(a), std::move(aux), spec);
}

}  // namespace ccard
