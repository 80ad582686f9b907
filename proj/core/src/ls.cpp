#include "recon/ls.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "recon/cp.hpp"

namespace recon {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<int> scratch_errors(const Problem& p, const std::vector<int>& pos) {
  std::vector<int> errs;
  errs.reserve(p.precs.size());
  for (auto [i, j] : p.precs) errs.push_back(constraint_error(pos[i], pos[j]));
  return errs;
}

}  // namespace

long long evaluation(const Problem& p, const std::vector<int>& pos) {
  long long sum = 0;
  for (auto [i, j] : p.precs) sum += constraint_error(pos[i], pos[j]);
  return sum;
}

int value(const Problem& p, const std::vector<int>& pos) {
  std::vector<char> touched(p.n, 0);
  for (auto [i, j] : p.precs) {
    if (constraint_error(pos[i], pos[j]) == 0) continue;
    touched[i] = 1;
    touched[j] = 1;
  }
  int clean = 0;
  for (int v = 0; v < p.n; ++v)
    if (!touched[v]) ++clean;
  return clean;
}

std::pair<int, std::vector<bool>> cost(const Problem& p, const std::vector<int>& pos) {
  const std::vector<int> errs = scratch_errors(p, pos);
  std::vector<bool> survive(p.n, true);
  std::vector<int> viol(p.n, 0);
  for (std::size_t k = 0; k < p.precs.size(); ++k) {
    if (errs[k] == 0) continue;
    auto [i, j] = p.precs[k];
    ++viol[i];
    if (j != i) ++viol[j];
  }
  std::vector<std::vector<int>> incident(p.n);
  for (std::size_t k = 0; k < p.precs.size(); ++k) {
    auto [i, j] = p.precs[k];
    incident[i].push_back(static_cast<int>(k));
    if (j != i) incident[j].push_back(static_cast<int>(k));
  }

  int survivors = p.n;
  for (;;) {
    int worst = -1;
    for (int v = 0; v < p.n; ++v)
      if (survive[v] && viol[v] > 0 && (worst < 0 || viol[v] > viol[worst])) worst = v;
    if (worst < 0) break;
    survive[worst] = false;
    --survivors;
    for (int k : incident[worst]) {
      if (errs[k] == 0) continue;
      auto [i, j] = p.precs[k];
      if (!survive[i] || !survive[j]) {
        // edge just deactivated by this removal: release the other endpoint
        int other = (i == worst) ? j : i;
        if (other != worst && survive[other]) --viol[other];
      }
    }
  }
  return {survivors, survive};
}

LocalSearch::LocalSearch(const Problem& problem)
    : problem_(problem), incident_(problem.n) {
  if (!problem.deps.empty())
    throw std::invalid_argument(
        "local search handles precedence-only instances; this one has " +
        std::to_string(problem.deps.size()) +
        " dependency constraints (use the exact solver)");
  for (std::size_t k = 0; k < problem.precs.size(); ++k) {
    auto [i, j] = problem.precs[k];
    incident_[i].push_back(static_cast<int>(k));
    if (j != i) incident_[j].push_back(static_cast<int>(k));
  }
}

LsState LocalSearch::initial_state(const std::optional<std::vector<int>>& warm) const {
  LsState s;
  if (warm) {
    if (static_cast<int>(warm->size()) != problem_.n)
      throw std::invalid_argument("warm start must hold exactly n positions");
    for (int v : *warm)
      if (v < 1 || v > problem_.n)
        throw std::invalid_argument("warm start position " + std::to_string(v) +
                                    " outside [1, n]");
    s.pos = *warm;
  } else {
    s.pos.resize(problem_.n);
    for (int v = 0; v < problem_.n; ++v) s.pos[v] = v + 1;
  }
  s.constraint_err = scratch_errors(problem_, s.pos);
  s.action_err.assign(problem_.n, 0);
  for (std::size_t k = 0; k < problem_.precs.size(); ++k) {
    auto [i, j] = problem_.precs[k];
    s.action_err[i] += s.constraint_err[k];
    if (j != i) s.action_err[j] += s.constraint_err[k];
    s.eval += s.constraint_err[k];
  }
  s.zero_err_actions = 0;
  for (int v = 0; v < problem_.n; ++v)
    if (s.action_err[v] == 0) ++s.zero_err_actions;
  s.tabu_until.assign(problem_.n, 0);
  return s;
}

long long LocalSearch::move_delta(const LsState& s, ActionId var, int new_pos) const {
  long long delta = 0;
  for (int k : incident_[var]) {
    auto [i, j] = problem_.precs[k];
    const int pi = (i == var) ? new_pos : s.pos[i];
    const int pj = (j == var) ? new_pos : s.pos[j];
    delta += constraint_error(pi, pj) - s.constraint_err[k];
  }
  return delta;
}

void LocalSearch::apply_move(LsState& s, ActionId var, int new_pos) const {
  for (int k : incident_[var]) {
    auto [i, j] = problem_.precs[k];
    const int pi = (i == var) ? new_pos : s.pos[i];
    const int pj = (j == var) ? new_pos : s.pos[j];
    const int ne = constraint_error(pi, pj);
    const int d = ne - s.constraint_err[k];
    if (d == 0) continue;
    s.constraint_err[k] = ne;
    s.eval += d;
    auto bump = [&](int a) {
      const int before = s.action_err[a];
      s.action_err[a] = before + d;
      if (before == 0 && s.action_err[a] != 0) --s.zero_err_actions;
      if (before != 0 && s.action_err[a] == 0) ++s.zero_err_actions;
    };
    bump(i);
    if (j != i) bump(j);
  }
  s.pos[var] = new_pos;
}

std::pair<int, std::vector<bool>> LocalSearch::cost_of(const LsState& s) const {
  std::vector<bool> survive(problem_.n, true);
  std::vector<int> viol(problem_.n, 0);
  for (std::size_t k = 0; k < problem_.precs.size(); ++k) {
    if (s.constraint_err[k] == 0) continue;
    auto [i, j] = problem_.precs[k];
    ++viol[i];
    if (j != i) ++viol[j];
  }
  int survivors = problem_.n;
  for (;;) {
    int worst = -1;
    for (int v = 0; v < problem_.n; ++v)
      if (survive[v] && viol[v] > 0 && (worst < 0 || viol[v] > viol[worst])) worst = v;
    if (worst < 0) break;
    survive[worst] = false;
    --survivors;
    for (int k : incident_[worst]) {
      if (s.constraint_err[k] == 0) continue;
      auto [i, j] = problem_.precs[k];
      int other = (i == worst) ? j : i;
      if (other != worst && survive[other]) --viol[other];
    }
  }
  return {survivors, survive};
}

LsResult LocalSearch::run(const LsParams& params) const {
  if (params.tabu_max < 1) throw std::invalid_argument("tabu_max must be >= 1");
  if (params.max_iterations < 0)
    throw std::invalid_argument("max_iterations must be >= 0");

  const auto start = Clock::now();
  const int n = problem_.n;
  LsState s = initial_state(params.warm_start);
  Rng rng(params.rng_seed);

  auto [c0, surv0] = cost_of(s);
  int best_cost = c0;
  std::vector<bool> best_surv = std::move(surv0);
  s.best_cost_seen = best_cost;

  LsResult result;
  result.trace.push_back({0, s.eval, s.zero_err_actions, best_cost, ms_since(start)});
  long long applied = 0;

  auto note_if_better = [&]() {
    auto [c, surv] = cost_of(s);
    if (c > best_cost) {
      best_cost = c;
      best_surv = std::move(surv);
      s.best_cost_seen = c;
      result.trace.push_back(
          {s.iteration, s.eval, s.zero_err_actions, c, ms_since(start)});
    }
  };

  // Strictly improving move for var, if any: larger decrease of the
  // evaluation wins, decrement wins ties. 0 = none.
  auto improving_move = [&](int var) -> int {
    const int p = s.pos[var];
    long long best_delta = 0;
    int choice = 0;
    if (p > 1) {
      const long long d = move_delta(s, var, p - 1);
      if (d < best_delta) {
        best_delta = d;
        choice = p - 1;
      }
    }
    if (p < n) {
      const long long d = move_delta(s, var, p + 1);
      if (d < best_delta) {
        best_delta = d;
        choice = p + 1;
      }
    }
    return choice;
  };

  if (params.mode == LsMode::Descent) {
    // cost() is sampled once per sweep; per-move sampling would dominate
    // the runtime at large n without changing the final survivors
    long long sweeps = 0;
    for (;;) {
      if (params.max_iterations > 0 && sweeps >= params.max_iterations) break;
      ++sweeps;
      bool moved = false;
      for (int var = 0; var < n; ++var) {
        const int np = improving_move(var);
        if (np == 0) continue;
        apply_move(s, var, np);
        ++applied;
        s.iteration = applied;
        moved = true;
      }
      if (moved) note_if_better();
      if (!moved) break;
    }
  } else {
    const long long budget = params.max_iterations;
    while (s.iteration < budget) {
      bool moved_any = false;
      for (int var = 0; var < n && s.iteration < budget; ++var) {
        ++s.iteration;
        if (s.tabu_until[var] >= s.iteration) {
          // Aspiration: a tabu move is allowed when it beats the best cost
          // seen so far. Decrement is probed first and wins ties.
          const int p = s.pos[var];
          int chosen = 0;
          int chosen_cost = best_cost;
          for (int np : {p - 1, p + 1}) {
            if (np < 1 || np > n) continue;
            apply_move(s, var, np);
            const int c = cost_of(s).first;
            apply_move(s, var, p);
            if (c > chosen_cost) {
              chosen_cost = c;
              chosen = np;
            }
          }
          if (chosen != 0) {
            apply_move(s, var, chosen);
            ++applied;
            moved_any = true;
            note_if_better();
          }
          continue;
        }
        const int np = improving_move(var);
        if (np != 0) {
          apply_move(s, var, np);
          ++applied;
          moved_any = true;
          note_if_better();
        } else {
          // Local minimum on this variable: mark it tabu for a random tenure.
          s.tabu_until[var] = s.iteration + uniform_int(rng, 1, params.tabu_max);
        }
      }
      if (!moved_any && s.iteration < budget) {
        // Everything is at a local minimum or tabu: force one random
        // degrading move to escape.
        ++s.iteration;
        const int var = uniform_int(rng, 0, n - 1);
        const int p = s.pos[var];
        int np = 0;
        if (p > 1 && p < n)
          np = uniform_int(rng, 0, 1) == 0 ? p - 1 : p + 1;
        else if (p > 1)
          np = p - 1;
        else if (p < n)
          np = p + 1;
        if (np != 0) {
          apply_move(s, var, np);
          ++applied;
          note_if_better();
        }
      }
    }
  }

  result.best.accepted = best_surv;
  result.best.position = earliest_positions(problem_, best_surv);
  result.stats.first_value = c0;
  result.stats.first_ms = result.trace.front().t_ms;
  result.stats.best_value = best_cost;
  result.stats.best_ms = result.trace.back().t_ms;
  result.stats.proved_optimal = false;
  result.stats.total_ms = ms_since(start);
  result.stats.nodes_or_iterations =
      params.mode == LsMode::Descent ? applied : s.iteration;
  return result;
}

LsResult descent(const Problem& p, const LsParams& params) {
  LsParams run_params = params;
  run_params.mode = LsMode::Descent;
  return LocalSearch(p).run(run_params);
}

LsResult tabu_search(const Problem& p, const LsParams& params) {
  LsParams run_params = params;
  run_params.mode = LsMode::Tabu;
  return LocalSearch(p).run(run_params);
}

}  // namespace recon
