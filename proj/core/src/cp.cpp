#include "recon/cp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace recon {

void CpState::undo_to(std::size_t m) {
  while (trail.size() > m) {
    const TrailEntry e = trail.back();
    trail.pop_back();
    switch (e.slot) {
      case 0: {
        Truth cur = bools[e.var];
        if (cur == Truth::True) --num_true;
        bools[e.var] = static_cast<Truth>(e.old);
        ++num_unknown;  // bools only move Unknown -> bound
        break;
      }
      case 1:
        lb[e.var] = e.old;
        break;
      default:
        ub[e.var] = e.old;
        break;
    }
  }
}

std::vector<int> earliest_positions(const Problem& p, const std::vector<bool>& accepted) {
  if (static_cast<int>(accepted.size()) != p.n)
    throw std::invalid_argument("earliest_positions: acceptance vector size != n");

  std::vector<std::vector<int>> out(p.n);
  std::vector<int> indeg(p.n, 0);
  for (auto [i, j] : p.precs) {
    if (!accepted[i] || !accepted[j]) continue;
    out[i].push_back(j);
    ++indeg[j];
  }

  std::vector<int> pos(p.n, 0);
  std::vector<int> stack;
  int active = 0;
  for (int v = 0; v < p.n; ++v) {
    if (!accepted[v]) continue;
    ++active;
    if (indeg[v] == 0) {
      stack.push_back(v);
      pos[v] = 1;
    }
  }
  int placed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++placed;
    for (int w : out[v]) {
      pos[w] = std::max(pos[w], pos[v] + 1);
      if (--indeg[w] == 0) stack.push_back(w);
    }
  }
  if (placed != active)
    throw std::logic_error("earliest_positions: accepted precedence subgraph is cyclic");
  return pos;
}

std::vector<std::pair<int, ActionId>> extract_schedule(const Problem& p,
                                                       const std::vector<bool>& accepted,
                                                       const std::vector<int>& positions) {
  std::vector<std::pair<int, ActionId>> out;
  for (int v = 0; v < p.n; ++v)
    if (accepted[v]) out.emplace_back(positions[v], v);
  std::sort(out.begin(), out.end());
  return out;
}

Schedule make_schedule(const Problem& p, const std::vector<bool>& accepted) {
  return Schedule{accepted, earliest_positions(p, accepted)};
}

CpSolver::CpSolver(const Problem& problem)
    : problem_(problem),
      dep_out_(problem.n),
      dep_in_(problem.n),
      prec_out_(problem.n),
      prec_in_(problem.n),
      mutex_(problem.n),
      self_prec_(problem.n, 0),
      degree_(problem.n, 0),
      in_queue_(problem.n, 0) {
  // Work over deduplicated pair sets; the degree heuristic counts each pair
  // once no matter how the instance was built.
  std::set<IdPair> deps(problem.deps.begin(), problem.deps.end());
  std::set<IdPair> precs(problem.precs.begin(), problem.precs.end());
  for (auto [i, j] : deps) {
    dep_out_[i].push_back(j);
    dep_in_[j].push_back(i);
    ++degree_[i];
    if (j != i) ++degree_[j];
  }
  for (auto [i, j] : precs) {
    ++degree_[i];
    if (j != i) ++degree_[j];
    if (i == j) {
      self_prec_[i] = 1;
      continue;
    }
    prec_out_[i].push_back(j);
    prec_in_[j].push_back(i);
    if (precs.count({j, i})) mutex_[i].push_back(j);
  }
  queue_.reserve(problem.n);
}

CpState CpSolver::root_state() const {
  CpState s;
  s.bools.assign(problem_.n, Truth::Unknown);
  s.lb.assign(problem_.n, 1);
  s.ub.assign(problem_.n, problem_.n);
  s.num_true = 0;
  s.num_unknown = problem_.n;
  return s;
}

void CpSolver::enqueue(int var) {
  if (!in_queue_[var]) {
    in_queue_[var] = 1;
    queue_.push_back(var);
  }
}

bool CpSolver::assign(CpState& s, int var, Truth value) {
  Truth cur = s.bools[var];
  if (cur == value) return true;
  if (cur != Truth::Unknown) return false;
  s.trail.push_back({var, 0, static_cast<int>(cur)});
  s.bools[var] = value;
  --s.num_unknown;
  if (value == Truth::True) ++s.num_true;
  enqueue(var);
  return true;
}

bool CpSolver::raise_lb(CpState& s, int var, int bound) {
  if (bound <= s.lb[var]) return true;
  s.trail.push_back({var, 1, s.lb[var]});
  s.lb[var] = bound;
  enqueue(var);
  return bound <= s.ub[var];
}

bool CpSolver::lower_ub(CpState& s, int var, int bound) {
  if (bound >= s.ub[var]) return true;
  s.trail.push_back({var, 2, s.ub[var]});
  s.ub[var] = bound;
  enqueue(var);
  return s.lb[var] <= bound;
}

bool CpSolver::process(CpState& s, int v) {
  if (self_prec_[v]) {
    if (s.bools[v] == Truth::True) return false;
    if (!assign(s, v, Truth::False)) return false;
  }
  if (s.bools[v] == Truth::True) {
    for (int j : dep_out_[v])
      if (!assign(s, j, Truth::True)) return false;
    for (int u : mutex_[v])
      if (!assign(s, u, Truth::False)) return false;
  }
  if (s.bools[v] == Truth::False) {
    for (int i : dep_in_[v])
      if (!assign(s, i, Truth::False)) return false;
  }

  for (int j : prec_out_[v]) {
    if (s.bools[v] == Truth::True && s.bools[j] == Truth::True) {
      if (!raise_lb(s, j, s.lb[v] + 1)) return false;
      if (!lower_ub(s, v, s.ub[j] - 1)) return false;
    }
    if (s.lb[v] >= s.ub[j]) {  // p_v < p_j has become impossible
      if (s.bools[v] == Truth::True && !assign(s, j, Truth::False)) return false;
      if (s.bools[j] == Truth::True && !assign(s, v, Truth::False)) return false;
    }
  }
  for (int i : prec_in_[v]) {
    if (s.bools[i] == Truth::True && s.bools[v] == Truth::True) {
      if (!raise_lb(s, v, s.lb[i] + 1)) return false;
      if (!lower_ub(s, i, s.ub[v] - 1)) return false;
    }
    if (s.lb[i] >= s.ub[v]) {
      if (s.bools[i] == Truth::True && !assign(s, v, Truth::False)) return false;
      if (s.bools[v] == Truth::True && !assign(s, i, Truth::False)) return false;
    }
  }
  return true;
}

PropResult CpSolver::drain(CpState& s) {
  while (qhead_ < queue_.size()) {
    int v = queue_[qhead_++];
    in_queue_[v] = 0;
    if (!process(s, v)) {
      for (std::size_t k = qhead_; k < queue_.size(); ++k) in_queue_[queue_[k]] = 0;
      queue_.clear();
      qhead_ = 0;
      return PropResult::Failed;
    }
  }
  queue_.clear();
  qhead_ = 0;
  return PropResult::Consistent;
}

void CpSolver::seed_all(CpState& s) {
  for (int v = 0; v < problem_.n; ++v) enqueue(v);
  (void)s;
}

PropResult CpSolver::propagate(CpState& s) {
  seed_all(s);
  return drain(s);
}

std::optional<ActionId> CpSolver::select_variable(const CpState& s) const {
  int best = -1;
  for (int v = 0; v < problem_.n; ++v) {
    if (s.bools[v] != Truth::Unknown) continue;
    if (best < 0 || degree_[v] > degree_[best]) best = v;
  }
  if (best < 0) return std::nullopt;
  return best;
}

double CpSolver::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start_)
      .count();
}

void CpSolver::record_incumbent(const CpState& s) {
  best_value_ = s.num_true;
  best_accepted_.assign(problem_.n, false);
  for (int v = 0; v < problem_.n; ++v)
    if (s.bools[v] == Truth::True) best_accepted_[v] = true;
  best_positions_ = earliest_positions(problem_, best_accepted_);

  const double t = elapsed_ms();
  if (incumbents_.empty()) {
    stats_.first_value = best_value_;
    stats_.first_ms = t;
  }
  stats_.best_value = best_value_;
  stats_.best_ms = t;
  incumbents_.push_back({best_value_, t, nodes_});
}

void CpSolver::dfs(CpState& s) {
  if (aborted_) return;
  if (policy_stop_ || (config_->cancel && config_->cancel->load(std::memory_order_relaxed)) ||
      (config_->node_limit && nodes_ >= *config_->node_limit) ||
      (config_->time_limit_ms && elapsed_ms() >= *config_->time_limit_ms)) {
    aborted_ = true;
    return;
  }
  ++nodes_;
  if (s.num_true + s.num_unknown <= best_value_) return;

  auto pick = select_variable(s);
  if (!pick) {
    record_incumbent(s);
    if (!config_->prove_optimality) policy_stop_ = true;
    return;
  }

  const std::size_t m = s.mark();
  assign(s, *pick, Truth::True);  // value 1 first: best-first for maximization
  if (drain(s) == PropResult::Consistent) dfs(s);
  s.undo_to(m);
  if (aborted_) return;

  assign(s, *pick, Truth::False);
  if (drain(s) == PropResult::Consistent) dfs(s);
  s.undo_to(m);
}

CpResult CpSolver::solve(const CpConfig& config) {
  config_ = &config;
  start_ = std::chrono::steady_clock::now();
  stats_ = SolveStats{};
  incumbents_.clear();
  best_value_ = -1;
  aborted_ = false;
  policy_stop_ = false;
  nodes_ = 0;

  CpState s = root_state();
  if (propagate(s) == PropResult::Failed)
    throw std::logic_error("root propagation failed; the empty schedule is always valid");
  dfs(s);

  CpResult result;
  if (best_value_ < 0) {
    // Stopped before reaching any leaf: fall back to the all-rejected
    // schedule, which is always valid.
    best_value_ = 0;
    best_accepted_.assign(problem_.n, false);
    best_positions_.assign(problem_.n, 0);
    const double t = elapsed_ms();
    stats_.first_value = 0;
    stats_.first_ms = t;
    stats_.best_value = 0;
    stats_.best_ms = t;
  }
  stats_.proved_optimal = !aborted_;
  stats_.total_ms = elapsed_ms();
  stats_.nodes_or_iterations = nodes_;

  result.best = Schedule{best_accepted_, best_positions_};
  result.stats = stats_;
  result.incumbents = incumbents_;
  config_ = nullptr;
  return result;
}

}  // namespace recon
