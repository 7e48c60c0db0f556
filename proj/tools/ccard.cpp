// SPDX-License-Identifier: Apache-2.0
//
// ccard: encode conditional cardinality constraints to DIMACS, check
// generalized arc consistency, count projected models, mine association
// rules and benchmark the conditional-AMO flavors against each other.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ccard/dimacs.hpp"
#include "ccard/encode.hpp"
#include "ccard/enumerate.hpp"
#include "ccard/errors.hpp"
#include "ccard/gac.hpp"
#include "ccard/mining.hpp"

namespace {

using namespace ccard;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 3;

struct ConstraintFlags {
  std::string kind = "amk";
  int n = 0;
  int k = -1;
  bool cond = false;
  std::string family = "seqcounter";
  std::string mode = "plain";
};

void add_constraint_flags(CLI::App* cmd, ConstraintFlags& f, bool required) {
  cmd->add_option("--kind", f.kind, "amk|alk|amo|exactly-one")
      ->check(CLI::IsMember({"amk", "alk", "amo", "exactly-one"}));
  auto* n = cmd->add_option("--n", f.n, "number of inputs");
  if (required) n->required();
  cmd->add_option("--k", f.k, "cardinality bound (amk/alk)");
  cmd->add_flag("--cond", f.cond, "conditional constraint (guarded by y)");
  cmd->add_option("--family", f.family,
                  "pairwise|seqcounter|pigeonhole|pigeonhole-basic|sortnet")
      ->check(CLI::IsMember(
          {"pairwise", "seqcounter", "pigeonhole", "pigeonhole-basic", "sortnet"}));
  cmd->add_option("--mode", f.mode, "plain|naive|gac")
      ->check(CLI::IsMember({"plain", "naive", "gac"}));
}

ConstraintSpec spec_from(const ConstraintFlags& f) {
  ConstraintSpec spec;
  spec.n = f.n;
  spec.conditional = f.cond;
  if (f.kind == "amo") {
    spec.kind = ConstraintKind::AtMostK;
    spec.k = 1;
  } else if (f.kind == "exactly-one") {
    spec.kind = ConstraintKind::ExactlyOne;
    spec.k = 1;
  } else {
    spec.kind = f.kind == "amk" ? ConstraintKind::AtMostK : ConstraintKind::AtLeastK;
    if (f.k < 0) throw UnsupportedCombination("--kind " + f.kind + " needs --k");
    spec.k = f.k;
  }
  return spec;
}

EncodingFlavor flavor_from(const ConstraintFlags& f) {
  EncodingFlavor flavor;
  if (f.family == "pairwise") flavor.family = Family::Pairwise;
  else if (f.family == "seqcounter") flavor.family = Family::SeqCounter;
  else if (f.family == "pigeonhole") flavor.family = Family::PigeonHole;
  else if (f.family == "pigeonhole-basic") flavor.family = Family::PigeonHoleBasic;
  else flavor.family = Family::SortNet;
  if (f.mode == "plain") flavor.mode = ConditionalMode::None;
  else if (f.mode == "naive") flavor.mode = ConditionalMode::NaiveAllClauses;
  else flavor.mode = ConditionalMode::GacSubset;
  return flavor;
}

int run_encode(const ConstraintFlags& flags, const std::string& out_path) {
  VarPool pool;
  EncodingArtifact art = encode(spec_from(flags), flavor_from(flags), pool);
  if (out_path.empty() || out_path == "-") {
    write_dimacs(art, std::cout);
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return kExitIo;
  }
  write_dimacs(art, out);
  return out ? kExitOk : kExitIo;
}

int run_check_single(const ConstraintFlags& flags, int max_n) {
  VarPool pool;
  ConstraintSpec spec = spec_from(flags);
  EncodingArtifact art = encode(spec, flavor_from(flags), pool);
  GacOptions opts;
  opts.max_n = max_n;
  GacReport rep = check_gac(art, opts);
  FlavorRow row{flavor_from(flags), spec.n, spec.k, art.cnf.num_vars(),
                static_cast<long>(art.cnf.num_clauses()), rep.pass,
                static_cast<int>(rep.counterexamples.size())};
  std::cout << to_line(row) << "\n" << to_text(rep, art);
  return rep.pass ? kExitOk : kExitCheckFailed;
}

int run_check_all(int max_n) {
  std::cout << "flavor,n,k,vars,clauses,verdict,counterexamples\n";
  GacOptions opts;
  opts.max_n = max_n;
  for (int n = 2; n <= max_n; ++n) {
    auto sweep = [&](ConstraintKind kind, Family family, int k) {
      ConstraintSpec spec{kind, n, k, true};
      std::vector<EncodingFlavor> flavors{{family, ConditionalMode::GacSubset},
                                          {family, ConditionalMode::NaiveAllClauses}};
      for (const FlavorRow& row : compare_flavors(spec, flavors, opts))
        std::cout << to_line(row) << "\n";
    };
    sweep(ConstraintKind::AtMostK, Family::Pairwise, 1);
    for (int k = 1; k < n; ++k) sweep(ConstraintKind::AtMostK, Family::SeqCounter, k);
    for (int k = 1; k < n; ++k) sweep(ConstraintKind::AtMostK, Family::SortNet, k);
    for (int k = 1; k <= n; ++k) sweep(ConstraintKind::AtLeastK, Family::PigeonHole, k);
  }
  return kExitOk;
}

int run_count(const ConstraintFlags& flags) {
  VarPool pool;
  EncodingArtifact art = encode(spec_from(flags), flavor_from(flags), pool);
  EnumConfig cfg;
  cfg.projection = art.inputs;
  if (art.condition) cfg.projection.push_back(*art.condition);
  cfg.branch_order = cfg.projection;
  std::vector<DynamicConstraintPtr> none;
  std::uint64_t models = 0;
  enumerate_models(art.cnf, none, cfg, [&](const std::vector<Lit>&) { ++models; });
  std::cout << models << "\n";
  return kExitOk;
}

MiningParams params_from(const std::string& minsupp, const std::string& minconf,
                         const std::string& mode, const std::string& amo) {
  MiningParams params;
  params.minsupp = parse_ratio(minsupp);
  params.minconf = parse_ratio(minconf);
  if (mode == "all") params.mode = MiningMode::AllValid;
  else if (mode == "closed") params.mode = MiningMode::Closed;
  else params.mode = MiningMode::MinimalNonRedundant;
  params.amo_flavor = amo == "naive" ? AmoFlavor::NaiveAllClauses : AmoFlavor::GacSubset;
  return params;
}

int run_mine(const std::string& data, const std::string& minsupp, const std::string& minconf,
             const std::string& mode, const std::string& amo, bool check_oracle) {
  std::ifstream in(data);
  if (!in) {
    std::cerr << "error: cannot open " << data << "\n";
    return kExitIo;
  }
  TransactionDb db = load_db(in);
  MiningParams params = params_from(minsupp, minconf, mode, amo);
  MiningResult result = mine(db, params);
  for (const Rule& r : result.rules) std::cout << r.str() << "\n";
  if (check_oracle) {
    std::vector<Rule> expected = mine_oracle(db, params);
    if (expected == result.rules) {
      std::cout << "OK: " << result.rules.size() << " rules match oracle\n";
    } else {
      std::cout << "MISMATCH: mined " << result.rules.size() << " rules, oracle has "
                << expected.size() << "\n";
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

struct BenchJob {
  std::string db_name;
  const TransactionDb* db;
  Ratio minsupp, minconf;
  AmoFlavor flavor;
};

struct BenchRow {
  bool solved = false;
  long long time_ms = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

int run_bench(const std::vector<std::string>& files, int grid_step, int timeout_s,
              const std::string& amo) {
  if (grid_step < 1 || grid_step > 100) {
    std::cerr << "error: --grid-step must be in 1..100\n";
    return kExitUsage;
  }
  std::vector<std::pair<std::string, TransactionDb>> dbs;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot open " << path << "\n";
      return kExitIo;
    }
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos)
      name = name.substr(slash + 1);
    dbs.emplace_back(name, load_db(in));
  }
  std::vector<AmoFlavor> flavors;
  if (amo == "both") flavors = {AmoFlavor::GacSubset, AmoFlavor::NaiveAllClauses};
  else if (amo == "gac") flavors = {AmoFlavor::GacSubset};
  else flavors = {AmoFlavor::NaiveAllClauses};

  std::vector<BenchJob> jobs;
  for (const auto& [name, db] : dbs)
    for (int supp = grid_step; supp <= 100; supp += grid_step)
      for (int conf = grid_step; conf <= 100; conf += grid_step)
        for (AmoFlavor flavor : flavors)
          jobs.push_back({name, &db, Ratio{supp, 100}, Ratio{conf, 100}, flavor});

  std::vector<BenchRow> rows(jobs.size());
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t id;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= jobs.size()) return;
        id = next++;
      }
      const BenchJob& job = jobs[id];
      MiningParams params;
      params.minsupp = job.minsupp;
      params.minconf = job.minconf;
      params.mode = MiningMode::MinimalNonRedundant;
      params.amo_flavor = job.flavor;
      MiningLimits limits;
      limits.max_time = std::chrono::milliseconds(1000LL * timeout_s);
      auto t0 = std::chrono::steady_clock::now();
      MiningResult res = mine(*job.db, params, limits);
      auto t1 = std::chrono::steady_clock::now();
      BenchRow row;
      row.solved = res.stats.status == EnumStatus::Exhausted;
      row.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
      row.decisions = res.stats.decisions;
      row.propagations = res.stats.propagations;
      rows[id] = row;
    }
  };
  unsigned nthreads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, jobs.size()));
  {
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }

  auto pad = [](const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
  };
  std::cout << pad("db", 16) << pad("minsupp", 9) << pad("minconf", 9) << pad("flavor", 7)
            << pad("solved", 7) << pad("time_ms", 9) << pad("decisions", 11)
            << "propagations\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const BenchJob& job = jobs[i];
    const BenchRow& row = rows[i];
    std::cout << pad(job.db_name, 16) << pad(job.minsupp.str(), 9)
              << pad(job.minconf.str(), 9) << pad(to_string(job.flavor), 7)
              << pad(row.solved ? "yes" : "no", 7) << pad(std::to_string(row.time_ms), 9)
              << pad(std::to_string(row.decisions), 11) << row.propagations << "\n";
  }
  std::cout << "\ndb,minsupp,minconf,flavor,solved,time_ms,decisions,propagations\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const BenchJob& job = jobs[i];
    const BenchRow& row = rows[i];
    std::cout << job.db_name << "," << job.minsupp.str() << "," << job.minconf.str() << ","
              << to_string(job.flavor) << "," << (row.solved ? 1 : 0) << "," << row.time_ms
              << "," << row.decisions << "," << row.propagations << "\n";
  }
  for (AmoFlavor flavor : flavors) {
    std::uint64_t solved = 0, total = 0;
    long long time_sum = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].flavor != flavor) continue;
      ++total;
      if (rows[i].solved) ++solved;
      time_sum += rows[i].time_ms;
    }
    std::cout << "total," << to_string(flavor) << "," << solved << "/" << total << ","
              << (total ? time_sum / static_cast<long long>(total) : 0) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional cardinality constraint toolkit"};
  app.require_subcommand(1);

  ConstraintFlags enc_flags;
  std::string out_path;
  CLI::App* cmd_encode = app.add_subcommand("encode", "emit a DIMACS encoding");
  add_constraint_flags(cmd_encode, enc_flags, true);
  cmd_encode->add_option("-o,--output", out_path, "output file (default stdout)");

  ConstraintFlags chk_flags;
  bool chk_all = false;
  int chk_max_n = 8;
  CLI::App* cmd_check = app.add_subcommand("check-gac", "run the GAC checker");
  add_constraint_flags(cmd_check, chk_flags, false);
  cmd_check->add_flag("--all", chk_all, "sweep every family and bound");
  cmd_check->add_option("--max-n", chk_max_n, "sweep cap (default 8)");

  ConstraintFlags cnt_flags;
  CLI::App* cmd_count = app.add_subcommand("count", "count projected models");
  add_constraint_flags(cmd_count, cnt_flags, true);

  std::string data, minsupp = "1/2", minconf = "1/2", mmode = "all", mamo = "gac";
  bool check_oracle = false;
  CLI::App* cmd_mine = app.add_subcommand("mine", "mine association rules");
  cmd_mine->add_option("--data", data, "transaction file")->required();
  cmd_mine->add_option("--minsupp", minsupp, "support threshold (A/B or P%)");
  cmd_mine->add_option("--minconf", minconf, "confidence threshold (A/B or P%)");
  cmd_mine->add_option("--mode", mmode, "all|closed|mnr")
      ->check(CLI::IsMember({"all", "closed", "mnr"}));
  cmd_mine->add_option("--amo", mamo, "gac|naive")->check(CLI::IsMember({"gac", "naive"}));
  cmd_mine->add_flag("--check-oracle", check_oracle, "compare against the brute-force miner");

  std::vector<std::string> bench_files;
  int grid_step = 25, timeout_s = 10;
  std::string bamo = "both";
  CLI::App* cmd_bench = app.add_subcommand("bench", "grid benchmark over amo flavors");
  cmd_bench->add_option("--data", bench_files, "transaction files")->required();
  cmd_bench->add_option("--grid-step", grid_step, "threshold grid step in percent");
  cmd_bench->add_option("--timeout", timeout_s, "per-configuration timeout in seconds");
  cmd_bench->add_option("--amo", bamo, "both|gac|naive")
      ->check(CLI::IsMember({"both", "gac", "naive"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_encode->parsed()) return run_encode(enc_flags, out_path);
    if (cmd_check->parsed())
      return chk_all ? run_check_all(chk_max_n) : run_check_single(chk_flags, chk_max_n);
    if (cmd_count->parsed()) return run_count(cnt_flags);
    if (cmd_mine->parsed())
      return run_mine(data, minsupp, minconf, mmode, mamo, check_oracle);
    if (cmd_bench->parsed()) return run_bench(bench_files, grid_step, timeout_s, bamo);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnknownItem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
