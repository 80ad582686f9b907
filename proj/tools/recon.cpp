// Command-line harness for the reconciliation toolkit: exact solving, local
// search, instance generation, CNF encoding/decoding, schedule checking, a
// brute-force oracle and a benchmark table runner.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "recon/cp.hpp"
#include "recon/gen.hpp"
#include "recon/io.hpp"
#include "recon/ls.hpp"
#include "recon/oracle.hpp"
#include "recon/problem.hpp"
#include "recon/satenc.hpp"

namespace {

using nlohmann::ordered_json;
using namespace recon;

// Exit codes: 0 ok, 1 violations found (check), 2 input error, 3 proof
// demanded but not obtained within limits, 4 internal invariant failure.
constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kInputError = 2;
constexpr int kUnproved = 3;
constexpr int kInternal = 4;

bool g_no_times = false;

std::string fmt_ms(double ms) {
  if (g_no_times) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

ordered_json json_ms(double ms) {
  if (g_no_times) return nullptr;
  return std::round(ms * 10.0) / 10.0;
}

ordered_json stats_json(const SolveStats& st) {
  ordered_json j;
  j["first_value"] = st.first_value;
  j["first_ms"] = json_ms(st.first_ms);
  j["best_value"] = st.best_value;
  j["best_ms"] = json_ms(st.best_ms);
  j["proved"] = st.proved_optimal;
  j["proof_ms"] = st.proved_optimal ? json_ms(st.total_ms) : ordered_json(nullptr);
  j["total_ms"] = json_ms(st.total_ms);
  j["iterations"] = st.nodes_or_iterations;
  return j;
}

void print_schedule_lines(std::ostream& out, const Problem& p, const Schedule& s) {
  for (auto [pos, id] : extract_schedule(p, s.accepted, s.position))
    out << pos << '\t' << p.action_name(id) << '\n';
}

ordered_json schedule_json(const Problem& p, const Schedule& s) {
  ordered_json arr = ordered_json::array();
  for (auto [pos, id] : extract_schedule(p, s.accepted, s.position)) {
    ordered_json e;
    e["position"] = pos;
    e["action"] = id;
    e["name"] = p.action_name(id);
    arr.push_back(e);
  }
  return arr;
}

void write_schedule_doc(const std::string& path, const Problem& p, const Schedule& s,
                        bool proved) {
  ScheduleDoc doc;
  doc.instance = p.name;
  doc.n = p.n;
  doc.value = objective(s);
  doc.proved = proved;
  doc.schedule = s;
  save_schedule_doc(path, doc);
}

void assert_valid(const Problem& p, const Schedule& s) {
  auto violations = check_schedule(p, s);
  if (!violations.empty())
    throw std::logic_error("solver emitted an invalid schedule: " +
                           describe(violations.front(), p));
}

// ---------------------------------------------------------------- solve --

struct SolveOpts {
  std::string instance;
  std::optional<double> timeout_ms;
  std::optional<long long> node_limit;
  bool prove = true;
  bool json = false;
  bool trace = false;
  std::string out;
};

int cmd_solve(const SolveOpts& opt) {
  Problem p = load_problem(opt.instance);
  CpConfig config;
  config.time_limit_ms = opt.timeout_ms;
  config.node_limit = opt.node_limit;
  config.prove_optimality = opt.prove;
  CpResult res = branch_and_bound(p, config);
  assert_valid(p, res.best);

  if (!opt.out.empty()) write_schedule_doc(opt.out, p, res.best, res.stats.proved_optimal);

  if (opt.json) {
    ordered_json j;
    j["command"] = "solve";
    j["instance"] = p.name;
    j["n"] = p.n;
    j["deps"] = p.deps.size();
    j["precs"] = p.precs.size();
    j["method"] = "cp";
    j["value"] = res.stats.best_value;
    j["proved"] = res.stats.proved_optimal;
    j["schedule"] = schedule_json(p, res.best);
    j["stats"] = stats_json(res.stats);
    if (opt.trace) {
      ordered_json tr = ordered_json::array();
      for (const auto& inc : res.incumbents) {
        ordered_json e;
        e["value"] = inc.value;
        e["t_ms"] = json_ms(inc.t_ms);
        e["nodes"] = inc.nodes;
        tr.push_back(e);
      }
      j["trace"] = tr;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    if (opt.trace)
      for (const auto& inc : res.incumbents)
        std::cout << "incumbent value=" << inc.value << " t_ms=" << fmt_ms(inc.t_ms)
                  << " nodes=" << inc.nodes << '\n';
    print_schedule_lines(std::cout, p, res.best);
    std::cout << '\n'
              << "value " << res.stats.best_value << "/" << p.n << '\n'
              << "proved " << (res.stats.proved_optimal ? "true" : "false") << '\n'
              << "first value=" << res.stats.first_value
              << " t_ms=" << fmt_ms(res.stats.first_ms) << '\n'
              << "best value=" << res.stats.best_value
              << " t_ms=" << fmt_ms(res.stats.best_ms) << '\n'
              << "total t_ms=" << fmt_ms(res.stats.total_ms)
              << " nodes=" << res.stats.nodes_or_iterations << '\n';
  }
  if (opt.prove && !res.stats.proved_optimal) return kUnproved;
  return kOk;
}

// ------------------------------------------------------------------- ls --

struct LsOpts {
  std::string instance;
  std::string mode = "tabu";
  std::uint32_t seed = 0;
  long long iters = -1;  // -1: default (10 n^2 for tabu, unbounded sweeps for descent)
  int tabu_max = 10;
  bool json = false;
  bool trace = false;
  bool from_logs = false;
  std::string out;
};

std::vector<int> positions_from_logs(const Problem& p) {
  std::vector<int> pos(p.n, 0);
  int next = 1;
  for (const auto& log : p.logs)
    for (ActionId a : log) {
      if (pos[a] != 0)
        throw std::invalid_argument("logs mention action " + std::to_string(a) +
                                    " more than once");
      pos[a] = next++;
    }
  for (int v = 0; v < p.n; ++v)
    if (pos[v] == 0) pos[v] = next++;
  return pos;
}

int cmd_ls(const LsOpts& opt) {
  Problem p = load_problem(opt.instance);
  LsParams params;
  params.mode = opt.mode == "descent" ? LsMode::Descent : LsMode::Tabu;
  params.rng_seed = opt.seed;
  params.tabu_max = opt.tabu_max;
  if (opt.iters >= 0)
    params.max_iterations = opt.iters;
  else
    params.max_iterations =
        params.mode == LsMode::Tabu ? 10LL * p.n * p.n : 0;
  if (opt.from_logs) params.warm_start = positions_from_logs(p);

  LsResult res = LocalSearch(p).run(params);
  assert_valid(p, res.best);

  if (!opt.out.empty()) write_schedule_doc(opt.out, p, res.best, false);

  if (opt.json) {
    ordered_json j;
    j["command"] = "ls";
    j["instance"] = p.name;
    j["n"] = p.n;
    j["precs"] = p.precs.size();
    j["method"] = opt.mode;
    j["seed"] = opt.seed;
    j["value"] = res.stats.best_value;
    j["schedule"] = schedule_json(p, res.best);
    j["stats"] = stats_json(res.stats);
    if (opt.trace) {
      ordered_json tr = ordered_json::array();
      for (const auto& e : res.trace) {
        ordered_json t;
        t["iter"] = e.iter;
        t["eval"] = e.eval;
        t["value"] = e.value;
        t["cost"] = e.cost;
        t["t_ms"] = json_ms(e.t_ms);
        tr.push_back(t);
      }
      j["trace"] = tr;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    if (opt.trace)
      for (const auto& e : res.trace)
        std::cout << "iter=" << e.iter << " eval=" << e.eval << " value=" << e.value
                  << " cost=" << e.cost << " t_ms=" << fmt_ms(e.t_ms) << '\n';
    print_schedule_lines(std::cout, p, res.best);
    std::cout << '\n'
              << "cost " << res.stats.best_value << "/" << p.n << '\n'
              << "mode " << opt.mode << " seed=" << opt.seed
              << " tabu_max=" << opt.tabu_max << '\n'
              << "first cost=" << res.stats.first_value << '\n'
              << "best cost=" << res.stats.best_value
              << " t_ms=" << fmt_ms(res.stats.best_ms) << '\n'
              << "total t_ms=" << fmt_ms(res.stats.total_ms)
              << " iterations=" << res.stats.nodes_or_iterations << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------ gen --

struct GenOpts {
  int size = 0;
  double d_dep = 0.0;
  double d_prec = 0.0;
  std::uint32_t seed = 0;
  std::string out;
  bool json = false;
};

int cmd_gen(const GenOpts& opt) {
  GenSpec spec{opt.size, opt.d_dep, opt.d_prec, opt.seed};
  Problem p = generate(spec);
  const std::string text = problem_to_json(p);
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out, text);
    if (opt.json) {
      ordered_json j;
      j["command"] = "gen";
      j["name"] = p.name;
      j["n"] = p.n;
      j["deps"] = p.deps.size();
      j["precs"] = p.precs.size();
      j["file"] = opt.out;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << p.name << ": n=" << p.n << " deps=" << p.deps.size()
                << " precs=" << p.precs.size() << " -> " << opt.out << '\n';
    }
  }
  return kOk;
}

// --------------------------------------------------------------- encode --

struct EncodeOpts {
  std::string cnf;
  std::string out;
  std::string map_out;
  bool json = false;
};

int cmd_encode(const EncodeOpts& opt) {
  CnfFormula cnf = parse_dimacs(read_file(opt.cnf), opt.cnf);
  auto [p, map] = encode(cnf);
  const std::string stem =
      std::filesystem::path(opt.cnf).stem().string();
  p.name = stem.empty() ? p.name : stem;
  const std::string out = opt.out.empty() ? stem + ".recon.json" : opt.out;
  const std::string map_out = opt.map_out.empty() ? stem + ".map.json" : opt.map_out;
  save_problem(out, p);
  write_file(map_out, reduction_map_to_json(map));
  if (opt.json) {
    ordered_json j;
    j["command"] = "encode";
    j["num_vars"] = cnf.num_vars;
    j["num_clauses"] = cnf.clauses.size();
    j["n"] = p.n;
    j["precs"] = p.precs.size();
    j["instance_file"] = out;
    j["map_file"] = map_out;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "encoded " << cnf.num_vars << " vars / " << cnf.clauses.size()
              << " clauses as " << p.n << " actions, " << p.precs.size()
              << " precedences -> " << out << ", map -> " << map_out << '\n';
  }
  return kOk;
}

// --------------------------------------------------------------- decode --

struct DecodeOpts {
  std::string map;
  std::string schedule;
  bool json = false;
};

int cmd_decode(const DecodeOpts& opt) {
  ReductionMap map = reduction_map_from_json(read_file(opt.map), opt.map);
  ScheduleDoc doc = load_schedule_doc(opt.schedule);
  const int target = map.num_vars * map.num_clauses;
  if (doc.n != 2 * target)
    throw std::invalid_argument(opt.schedule + ": schedule is over " +
                                std::to_string(doc.n) + " actions, map expects " +
                                std::to_string(2 * target));
  auto valuation = decode(map, doc.schedule);

  if (opt.json) {
    ordered_json j;
    j["command"] = "decode";
    j["cardinality"] = doc.value;
    j["target"] = target;
    j["proved"] = doc.proved;
    j["valuation"] = valuation ? ordered_json(*valuation) : ordered_json(nullptr);
    std::cout << j.dump(2) << '\n';
  } else if (valuation) {
    std::cout << "satisfying valuation:\n";
    for (int v = 0; v < map.num_vars; ++v)
      std::cout << "x" << v << "=" << ((*valuation)[v] ? "true" : "false") << '\n';
  } else {
    std::cout << "no valuation: schedule accepts " << doc.value << " < " << target
              << " actions\n";
    if (doc.proved)
      std::cout << "schedule is a proved optimum, so the formula is unsatisfiable\n";
    else
      std::cout << "schedule is not a proved optimum; unsatisfiability not established\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- check --

struct CheckOpts {
  std::string instance;
  std::string schedule;
  bool json = false;
};

int cmd_check(const CheckOpts& opt) {
  Problem p = load_problem(opt.instance);
  ScheduleDoc doc = load_schedule_doc(opt.schedule);
  if (doc.n != p.n)
    throw std::invalid_argument(opt.schedule + ": schedule is over " +
                                std::to_string(doc.n) + " actions, instance has " +
                                std::to_string(p.n));
  auto violations = check_schedule(p, doc.schedule);
  if (opt.json) {
    static const char* kind_names[] = {"dependency", "precedence", "position-range",
                                       "position-missing"};
    ordered_json arr = ordered_json::array();
    for (const auto& v : violations) {
      ordered_json e;
      e["kind"] = kind_names[static_cast<int>(v.kind)];
      e["a"] = v.a;
      if (v.b >= 0) e["b"] = v.b;
      e["text"] = describe(v, p);
      arr.push_back(e);
    }
    ordered_json j;
    j["command"] = "check";
    j["instance"] = p.name;
    j["value"] = doc.value;
    j["violations"] = arr;
    std::cout << j.dump(2) << '\n';
  } else if (violations.empty()) {
    std::cout << "OK: " << doc.value << " accepted, no violations\n";
  } else {
    for (const auto& v : violations) std::cout << describe(v, p) << '\n';
    std::cout << violations.size() << " violation(s)\n";
  }
  return violations.empty() ? kOk : kViolations;
}

// --------------------------------------------------------------- oracle --

struct OracleOpts {
  std::string instance;
  int cap = 20;
  bool json = false;
};

int cmd_oracle(const OracleOpts& opt) {
  Problem p = load_problem(opt.instance);
  OracleResult res = brute_force(p, opt.cap);
  if (opt.json) {
    ordered_json j;
    j["command"] = "oracle";
    j["instance"] = p.name;
    j["optimum"] = res.opt_value;
    j["witness"] = res.witness;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "optimum " << res.opt_value << "/" << p.n << "\naccepted:";
    for (int v = 0; v < p.n; ++v)
      if (res.witness[v]) std::cout << ' ' << p.action_name(v);
    std::cout << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- bench --

struct BenchOpts {
  std::vector<int> sizes;
  double d_dep = 1.5;
  double d_prec = 1.5;
  int instances = 3;
  std::uint32_t seed = 1;
  std::vector<std::string> methods{"cp", "descent", "tabu"};
  std::optional<double> timeout_ms;
  long long iters = -1;
  int tabu_max = 10;
  int jobs = 1;
  std::string csv;
};

struct BenchRow {
  std::string name;
  int size = 0;
  std::size_t dep_count = 0;
  std::size_t prec_count = 0;
  std::string method;
  SolveStats stats;
  std::optional<double> proof_ms;  // present only when proved
  std::optional<double> timeout_ms;
};

BenchRow run_bench_one(const Problem& p, const std::string& method,
                       const BenchOpts& opt) {
  BenchRow row;
  row.name = p.name;
  row.size = p.n;
  row.dep_count = p.deps.size();
  row.prec_count = p.precs.size();
  row.method = method;
  row.timeout_ms = opt.timeout_ms;
  if (method == "cp") {
    CpConfig config;
    config.time_limit_ms = opt.timeout_ms;
    CpResult res = branch_and_bound(p, config);
    assert_valid(p, res.best);
    row.stats = res.stats;
    if (res.stats.proved_optimal) row.proof_ms = res.stats.total_ms;
  } else {
    LsParams params;
    params.mode = method == "descent" ? LsMode::Descent : LsMode::Tabu;
    params.rng_seed = opt.seed;
    params.tabu_max = opt.tabu_max;
    params.max_iterations =
        opt.iters >= 0 ? opt.iters
                       : (params.mode == LsMode::Tabu ? 10LL * p.n * p.n : 0);
    LsResult res = LocalSearch(p).run(params);
    assert_valid(p, res.best);
    row.stats = res.stats;
  }
  return row;
}

int cmd_bench(const BenchOpts& opt) {
  if (opt.sizes.empty())
    throw std::invalid_argument("bench: give at least one size via --sizes");
  const bool has_deps = opt.d_dep > 0.0;
  std::vector<std::string> methods = opt.methods;
  if (has_deps) {
    auto is_ls = [](const std::string& m) { return m != "cp"; };
    if (std::any_of(methods.begin(), methods.end(), is_ls)) {
      std::cerr << "note: local search handles precedence-only instances; "
                   "skipping descent/tabu because dep density is nonzero\n";
      methods.erase(std::remove_if(methods.begin(), methods.end(), is_ls),
                    methods.end());
    }
  }
  if (methods.empty()) throw std::invalid_argument("bench: no applicable methods");

  struct Task {
    Problem problem;
    std::string method;
  };
  std::vector<Task> tasks;
  for (int size : opt.sizes)
    for (int k = 0; k < opt.instances; ++k) {
      GenSpec spec{size, opt.d_dep, opt.d_prec,
                   opt.seed + static_cast<std::uint32_t>(k)};
      Problem p = generate(spec);
      for (const auto& m : methods) tasks.push_back({p, m});
    }

  std::vector<BenchRow> rows(tasks.size());
  if (opt.jobs <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t)
      rows[t] = run_bench_one(tasks[t].problem, tasks[t].method, opt);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) return;
        rows[t] = run_bench_one(tasks[t].problem, tasks[t].method, opt);
      }
    };
    std::vector<std::future<void>> pool;
    for (int w = 0; w < opt.jobs; ++w)
      pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }

  // exact-solver table
  auto any_method = [&](const std::string& m) {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
  };
  if (any_method("cp")) {
    std::printf("%-28s %5s %6s %6s %6s %9s %6s %9s %10s\n", "bench", "size", "#dep",
                "#prec", "first", "t_ms", "best", "t_ms", "proof_ms");
    for (const auto& r : rows) {
      if (r.method != "cp") continue;
      std::printf("%-28s %5d %6zu %6zu %6d %9s %6d %9s %10s\n", r.name.c_str(), r.size,
                  r.dep_count, r.prec_count, r.stats.first_value,
                  fmt_ms(r.stats.first_ms).c_str(), r.stats.best_value,
                  fmt_ms(r.stats.best_ms).c_str(),
                  r.proof_ms ? fmt_ms(*r.proof_ms).c_str() : "??");
    }
    std::printf("\n");
  }
  if (any_method("descent") || any_method("tabu")) {
    std::printf("%-28s %5s %6s %-8s %6s %9s %9s\n", "bench", "size", "#prec", "method",
                "best", "#iter", "t_ms");
    for (const auto& r : rows) {
      if (r.method == "cp") continue;
      std::printf("%-28s %5d %6zu %-8s %6d %9lld %9s\n", r.name.c_str(), r.size,
                  r.prec_count, r.method.c_str(), r.stats.best_value,
                  r.stats.nodes_or_iterations, fmt_ms(r.stats.total_ms).c_str());
    }
    std::printf("\n");
  }

  // per-size aggregates
  std::printf("%-8s %5s %10s %11s %12s\n", "method", "size", "mean_best", "median_best",
              "mean_t_ms");
  for (const auto& m : methods) {
    for (int size : opt.sizes) {
      std::vector<int> bests;
      double t_sum = 0;
      for (const auto& r : rows)
        if (r.method == m && r.size == size) {
          bests.push_back(r.stats.best_value);
          t_sum += r.stats.total_ms;
        }
      if (bests.empty()) continue;
      std::sort(bests.begin(), bests.end());
      const double mean =
          std::accumulate(bests.begin(), bests.end(), 0.0) / bests.size();
      const double median = bests.size() % 2 == 1
                                ? bests[bests.size() / 2]
                                : (bests[bests.size() / 2 - 1] + bests[bests.size() / 2]) / 2.0;
      const std::string mean_t = fmt_ms(t_sum / bests.size());
      std::printf("%-8s %5d %10.2f %11.2f %12s\n", m.c_str(), size, mean, median,
                  mean_t.c_str());
    }
  }

  if (!opt.csv.empty()) {
    std::ostringstream csv;
    csv << "name,size,n_dep,n_prec,method,first_value,first_ms,best_value,best_ms,"
           "proof_ms,iterations,proved,timeout_ms\n";
    auto cell_ms = [&](double ms) { return g_no_times ? std::string{} : fmt_ms(ms); };
    for (const auto& r : rows) {
      csv << r.name << ',' << r.size << ',' << r.dep_count << ',' << r.prec_count << ','
          << r.method << ',' << r.stats.first_value << ',' << cell_ms(r.stats.first_ms)
          << ',' << r.stats.best_value << ',' << cell_ms(r.stats.best_ms) << ','
          << (r.proof_ms ? cell_ms(*r.proof_ms) : std::string{}) << ','
          << r.stats.nodes_or_iterations << ','
          << (r.stats.proved_optimal ? "true" : "false") << ','
          << (r.timeout_ms ? std::to_string(static_cast<long long>(*r.timeout_ms))
                           : std::string{})
          << '\n';
    }
    write_file(opt.csv, csv.str());
    std::printf("wrote %s\n", opt.csv.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"log-based reconciliation: exact and local-search solvers"};
  app.require_subcommand(1);
  app.add_flag("--no-times", g_no_times,
               "render timing fields as '-' (deterministic output)");

  SolveOpts solve_opts;
  auto* solve = app.add_subcommand("solve", "exact branch-and-bound solve");
  solve->add_option("instance", solve_opts.instance, "instance JSON file")->required();
  solve->add_option("--timeout", solve_opts.timeout_ms, "time limit in ms");
  solve->add_option("--node-limit", solve_opts.node_limit, "search node limit");
  solve->add_flag("--prove,!--no-prove", solve_opts.prove,
                  "run to proved optimality (default) or stop at the first solution");
  solve->add_flag("--json", solve_opts.json, "machine-readable report");
  solve->add_flag("--trace", solve_opts.trace, "print incumbent trace lines");
  solve->add_option("--out", solve_opts.out, "write the schedule document here");

  LsOpts ls_opts;
  auto* ls = app.add_subcommand("ls", "local search (precedence-only instances)");
  ls->add_option("instance", ls_opts.instance, "instance JSON file")->required();
  ls->add_option("--mode", ls_opts.mode, "descent or tabu")
      ->check(CLI::IsMember({"descent", "tabu"}));
  ls->add_option("--seed", ls_opts.seed, "RNG seed");
  ls->add_option("--iters", ls_opts.iters,
                 "iteration budget (tabu: attempted moves, default 10*n^2; "
                 "descent: sweep cap, default unbounded)");
  ls->add_option("--tabu-max", ls_opts.tabu_max, "maximum tabu tenure");
  ls->add_flag("--json", ls_opts.json, "machine-readable report");
  ls->add_flag("--trace", ls_opts.trace, "print improvement trace lines");
  ls->add_flag("--init-from-logs", ls_opts.from_logs,
               "warm-start positions from the instance's logs");
  ls->add_option("--out", ls_opts.out, "write the schedule document here");

  GenOpts gen_opts;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--size", gen_opts.size, "number of actions")->required();
  gen->add_option("--d-dep", gen_opts.d_dep, "dependency density");
  gen->add_option("--d-prec", gen_opts.d_prec, "precedence density");
  gen->add_option("--seed", gen_opts.seed, "RNG seed");
  gen->add_option("--out", gen_opts.out, "output file (default stdout)");
  gen->add_flag("--json", gen_opts.json, "machine-readable report");

  EncodeOpts enc_opts;
  auto* enc = app.add_subcommand("encode", "encode a DIMACS CNF as an instance");
  enc->add_option("cnf", enc_opts.cnf, "DIMACS CNF file")->required();
  enc->add_option("--out", enc_opts.out, "instance output file");
  enc->add_option("--map-out", enc_opts.map_out, "decode map output file");
  enc->add_flag("--json", enc_opts.json, "machine-readable report");

  DecodeOpts dec_opts;
  auto* dec = app.add_subcommand("decode", "read a valuation back from a schedule");
  dec->add_option("--map", dec_opts.map, "map file from encode")->required();
  dec->add_option("--schedule", dec_opts.schedule, "schedule document from solve --out")
      ->required();
  dec->add_flag("--json", dec_opts.json, "machine-readable report");

  CheckOpts check_opts;
  auto* check = app.add_subcommand("check", "validate a schedule against an instance");
  check->add_option("instance", check_opts.instance, "instance JSON file")->required();
  check->add_option("schedule", check_opts.schedule, "schedule document")->required();
  check->add_flag("--json", check_opts.json, "machine-readable report");

  OracleOpts oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for small instances");
  oracle->add_option("instance", oracle_opts.instance, "instance JSON file")->required();
  oracle->add_option("--cap", oracle_opts.cap, "refuse instances larger than this");
  oracle->add_flag("--json", oracle_opts.json, "machine-readable report");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "generate instances and tabulate solver runs");
  bench->add_option("--sizes", bench_opts.sizes, "instance sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--d-dep", bench_opts.d_dep, "dependency density");
  bench->add_option("--d-prec", bench_opts.d_prec, "precedence density");
  bench->add_option("--instances", bench_opts.instances, "instances per size");
  bench->add_option("--seed", bench_opts.seed, "base RNG seed");
  bench->add_option("--methods", bench_opts.methods, "cp, descent, tabu")
      ->delimiter(',')
      ->check(CLI::IsMember({"cp", "descent", "tabu"}));
  bench->add_option("--timeout", bench_opts.timeout_ms, "per-instance time limit in ms");
  bench->add_option("--iters", bench_opts.iters, "local-search iteration budget");
  bench->add_option("--tabu-max", bench_opts.tabu_max, "maximum tabu tenure");
  bench->add_option("--jobs", bench_opts.jobs, "instances solved concurrently");
  bench->add_option("--csv", bench_opts.csv, "also write rows as CSV");

  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opts);
    if (ls->parsed()) return cmd_ls(ls_opts);
    if (gen->parsed()) return cmd_gen(gen_opts);
    if (enc->parsed()) return cmd_encode(enc_opts);
    if (dec->parsed()) return cmd_decode(dec_opts);
    if (check->parsed()) return cmd_check(check_opts);
    if (oracle->parsed()) return cmd_oracle(oracle_opts);
    if (bench->parsed()) return cmd_bench(bench_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
