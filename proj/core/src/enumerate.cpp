// SPDX-License-Identifier: Apache-2.0

#include "ccard/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccard {

namespace {

class AtLeastCounter final : public DynamicConstraint {
 public:
  AtLeastCounter(std::vector<Var> vars, int bound)
      : vars_(std::move(vars)), bound_(bound) {}

  bool admits(const Engine& eng) const override {
    int reachable = 0;
    for (Var v : vars_)
      if (eng.value(v) != Value::False) ++reachable;
    return reachable >= bound_;
  }

 private:
  std::vector<Var> vars_;
  int bound_;
};

class ConfidenceBound final : public DynamicConstraint {
 public:
  ConfidenceBound(std::vector<Var> p, std::vector<Var> q, Ratio minconf)
      : p_(std::move(p)), q_(std::move(q)), minconf_(minconf) {}

  bool admits(const Engine& eng) const override {
    std::int64_t n_max = 0, c = 0;
    for (std::size_t i = 0; i < q_.size(); ++i) {
      Value qv = eng.value(q_[i]);
      if (qv != Value::False) {
        ++n_max;
        continue;
      }
      if (eng.value(p_[i]) == Value::True) ++c;
    }
    if (n_max == 0) return false;  // confidence cannot become positive
    return minconf_.den * n_max >= minconf_.num * (n_max + c);
  }

 private:
  std::vector<Var> p_, q_;
  Ratio minconf_;
};

}  // namespace

DynamicConstraintPtr make_atleast_counter(std::vector<Var> vars, int bound) {
  if (bound < 0 || bound > static_cast<int>(vars.size()))
    throw std::invalid_argument("counter bound out of range");
  return std::make_unique<AtLeastCounter>(std::move(vars), bound);
}

DynamicConstraintPtr make_confidence_constraint(std::vector<Var> p_vars,
                                                std::vector<Var> q_vars, Ratio minconf) {
  if (p_vars.size() != q_vars.size())
    throw std::invalid_argument("confidence constraint needs |p| == |q|");
  if (minconf.num <= 0 || minconf > Ratio{1, 1})
    throw std::invalid_argument("confidence threshold must be in (0, 1]");
  return std::make_unique<ConfidenceBound>(std::move(p_vars), std::move(q_vars), minconf);
}

namespace {

class ModelEnumerator {
 public:
  ModelEnumerator(const Cnf& cnf, const std::vector<DynamicConstraintPtr>& dynamics,
                  const EnumConfig& config, const ModelSink& sink)
      : eng_(cnf), dynamics_(dynamics), config_(config), sink_(sink) {
    for (Var v : config.projection)
      if (v < 1 || v > cnf.num_vars())
        throw std::invalid_argument("projection variable out of range");
    // Branch ranks: listed variables first in list order, rest by index.
    rank_.assign(static_cast<std::size_t>(cnf.num_vars()) + 1, 0);
    int next = 1;
    for (Var v : config.branch_order) {
      if (v < 1 || v > cnf.num_vars())
        throw std::invalid_argument("branch variable out of range");
      if (rank_[static_cast<std::size_t>(v)] == 0) rank_[static_cast<std::size_t>(v)] = next++;
    }
    for (Var v = 1; v <= cnf.num_vars(); ++v)
      if (rank_[static_cast<std::size_t>(v)] == 0) rank_[static_cast<std::size_t>(v)] = next++;
    by_rank_.assign(static_cast<std::size_t>(cnf.num_vars()), 0);
    for (Var v = 1; v <= cnf.num_vars(); ++v)
      by_rank_[static_cast<std::size_t>(rank_[static_cast<std::size_t>(v)] - 1)] = v;
  }

  EnumStats run() {
    using clock = std::chrono::steady_clock;
    std::optional<clock::time_point> deadline;
    if (config_.max_time) deadline = clock::now() + *config_.max_time;
    std::uint64_t ticks = 0;

    for (;;) {
      if (deadline && (++ticks & 0x3f) == 0 && clock::now() > *deadline) {
        stats_.status = EnumStatus::TimeLimit;
        break;
      }
      bool rejected = eng_.propagate().has_value();
      if (!rejected)
        for (const auto& dyn : dynamics_)
          if (!dyn->admits(eng_)) {
            rejected = true;
            break;
          }
      if (rejected) {
        if (!flip_last_open_decision()) break;  // exhausted
        continue;
      }
      Var v = pick_branch_var();
      if (v == 0) {
        if (!report_model()) break;
        continue;
      }
      eng_.new_level();
      decisions_.push_back({pos(v), false});
      eng_.enqueue(pos(v));  // true-first value order
      ++stats_.decisions;
    }
    stats_.propagations = eng_.num_propagations();
    return stats_;
  }

 private:
  Var pick_branch_var() {
    for (Var v : by_rank_)
      if (eng_.value(v) == Value::Unassigned) return v;
    return 0;
  }

  // Chronological backtracking: discard flipped decisions, flip the deepest
  // open one. False when the tree is exhausted.
  bool flip_last_open_decision() {
    while (!decisions_.empty() && decisions_.back().flipped) {
      eng_.backtrack(eng_.level() - 1);
      decisions_.pop_back();
    }
    if (decisions_.empty()) {
      eng_.backtrack(0);
      return false;
    }
    Lit l = decisions_.back().lit;
    eng_.backtrack(eng_.level() - 1);
    decisions_.pop_back();
    eng_.new_level();
    decisions_.push_back({~l, true});
    eng_.enqueue(~l);
    ++stats_.decisions;
    return true;
  }

  bool report_model() {
    std::vector<Lit> model;
    model.reserve(config_.projection.size());
    for (Var v : config_.projection)
      model.push_back(eng_.value(v) == Value::True ? pos(v) : neg(v));
    ++stats_.models;
    if (sink_) sink_(model);
    if (config_.max_models && stats_.models >= *config_.max_models) {
      stats_.status = EnumStatus::ModelLimit;
      return false;
    }
    // Permanent blocking clause over the projection.
    std::vector<Lit> block;
    block.reserve(model.size());
    for (Lit l : model) block.push_back(~l);
    if (block.size() < 2) {
      // Units (and the empty clause of an empty projection) live at the
      // root so they survive backtracking.
      eng_.backtrack(0);
      decisions_.clear();
      eng_.add_clause(std::move(block));
      return !eng_.root_conflict();
    }
    // Backtrack as from a conflict until the clause is no longer falsified,
    // then attach it; the skipped subtrees share the blocked projection.
    for (;;) {
      if (!flip_last_open_decision()) return false;
      bool falsified = true;
      for (Lit l : block)
        if (eng_.value(l) != Value::False) {
          falsified = false;
          break;
        }
      if (!falsified) break;
    }
    eng_.add_clause(std::move(block));
    return true;
  }

  Engine eng_;
  const std::vector<DynamicConstraintPtr>& dynamics_;
  const EnumConfig& config_;
  const ModelSink& sink_;

  struct Decision {
    Lit lit;
    bool flipped;
  };
  std::vector<Decision> decisions_;
  std::vector<int> rank_;
  std::vector<Var> by_rank_;
  EnumStats stats_;
};

}  // namespace

EnumStats enumerate_models(const Cnf& cnf,
                           const std::vector<DynamicConstraintPtr>& dynamics,
                           const EnumConfig& config, const ModelSink& sink) {
  ModelEnumerator run(cnf, dynamics, config, sink);
  return run.run();
}

std::pair<std::vector<std::vector<Lit>>, EnumStats> enumerate_collect(
    const Cnf& cnf, const std::vector<DynamicConstraintPtr>& dynamics,
    const EnumConfig& config) {
  std::vector<std::vector<Lit>> models;
  EnumStats stats = enumerate_models(cnf, dynamics, config,
                                     [&](const std::vector<Lit>& m) { models.push_back(m); });
  return {std::move(models), stats};
}

}  // namespace ccard
