#include "recon/satenc.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace recon {
namespace {

[[noreturn]] void input_error(const std::string& origin, const std::string& what) {
  throw std::invalid_argument(origin + ": " + what);
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  CnfFormula cnf;
  int expected_clauses = -1;
  std::vector<Lit> clause;
  std::set<int> vars_in_clause;

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream header(line);
      std::string p, fmt;
      header >> p >> fmt >> cnf.num_vars >> expected_clauses;
      if (!header || fmt != "cnf")
        input_error(origin, "malformed header, expected \"p cnf N C\"");
      if (cnf.num_vars < 1) input_error(origin, "variable count must be >= 1");
      if (expected_clauses < 0) input_error(origin, "negative clause count");
      continue;
    }
    if (expected_clauses < 0) input_error(origin, "clause data before the header");
    std::istringstream body(line);
    long long lit;
    while (body >> lit) {
      if (lit == 0) {
        if (clause.empty()) input_error(origin, "empty clause");
        cnf.clauses.push_back(clause);
        clause.clear();
        vars_in_clause.clear();
        continue;
      }
      const long long v = lit > 0 ? lit : -lit;
      if (v > cnf.num_vars)
        input_error(origin, "literal " + std::to_string(lit) +
                                " exceeds the declared variable count");
      if (!vars_in_clause.insert(static_cast<int>(v)).second)
        input_error(origin, "variable " + std::to_string(v) +
                                " appears twice in one clause");
      clause.push_back({static_cast<int>(v) - 1, lit < 0});
    }
  }
  if (!clause.empty()) input_error(origin, "unterminated clause at end of input");
  if (expected_clauses < 0) input_error(origin, "missing \"p cnf\" header");
  if (static_cast<int>(cnf.clauses.size()) != expected_clauses)
    input_error(origin, "header declares " + std::to_string(expected_clauses) +
                            " clauses but " + std::to_string(cnf.clauses.size()) +
                            " were given");
  return cnf;
}

std::pair<Problem, ReductionMap> encode(const CnfFormula& cnf) {
  const int N = cnf.num_vars;
  const int C = static_cast<int>(cnf.clauses.size());

  ReductionMap map;
  map.num_vars = N;
  map.num_clauses = C;
  map.false_ids.assign(N, std::vector<ActionId>(C));
  map.true_ids.assign(N, std::vector<ActionId>(C));

  Problem p;
  p.n = 2 * N * C;
  p.name = "cnf-n" + std::to_string(N) + "-c" + std::to_string(C);
  p.names.resize(p.n);
  for (int v = 0; v < N; ++v) {
    for (int i = 1; i <= C; ++i) {
      const ActionId f = (v * C + (i - 1)) * 2;
      const ActionId t = f + 1;
      map.false_ids[v][i - 1] = f;
      map.true_ids[v][i - 1] = t;
      p.names[f] = "x" + std::to_string(v) + "_f" + std::to_string(i);
      p.names[t] = "x" + std::to_string(v) + "_t" + std::to_string(i);
    }
  }

  // Mutual exclusion: both orders between every false copy and every true
  // copy of the same variable.
  for (int v = 0; v < N; ++v)
    for (int i = 1; i <= C; ++i)
      for (int j = 1; j <= C; ++j) {
        p.precs.emplace_back(map.id_of(v, i, false), map.id_of(v, j, true));
        p.precs.emplace_back(map.id_of(v, j, true), map.id_of(v, i, false));
      }

  // One cycle per clause through the falsifying copies at that clause's
  // index, following literal order and closing last to first. A unit
  // clause yields a self-precedence.
  for (int c = 0; c < C; ++c) {
    const auto& clause = cnf.clauses[c];
    std::vector<ActionId> ring;
    ring.reserve(clause.size());
    for (const Lit& lit : clause) ring.push_back(map.id_of(lit.var, c + 1, lit.neg));
    for (std::size_t k = 0; k < ring.size(); ++k)
      p.precs.emplace_back(ring[k], ring[(k + 1) % ring.size()]);
  }
  return {std::move(p), std::move(map)};
}

std::optional<std::vector<bool>> decode(const ReductionMap& map, const Schedule& schedule) {
  const int target = map.num_vars * map.num_clauses;
  if (objective(schedule) != target) return std::nullopt;

  std::vector<bool> valuation(map.num_vars, false);
  for (int v = 0; v < map.num_vars; ++v) {
    int true_taken = 0;
    int false_taken = 0;
    for (int i = 0; i < map.num_clauses; ++i) {
      if (schedule.accepted[map.true_ids[v][i]]) ++true_taken;
      if (schedule.accepted[map.false_ids[v][i]]) ++false_taken;
    }
    const bool all_true = true_taken == map.num_clauses && false_taken == 0;
    const bool all_false = false_taken == map.num_clauses && true_taken == 0;
    if (!all_true && !all_false)
      throw std::logic_error(
          "decode: full-cardinality schedule breaks mutual exclusion for variable " +
          std::to_string(v));
    valuation[v] = all_true;
  }
  return valuation;
}

bool cnf_satisfied(const CnfFormula& cnf, const std::vector<bool>& valuation) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (const Lit& lit : clause)
      if (valuation[lit.var] != lit.neg) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

bool truth_table_satisfiable(const CnfFormula& cnf) {
  if (cnf.num_vars > 20)
    throw std::invalid_argument("truth_table_satisfiable: too many variables");
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  std::vector<bool> valuation(cnf.num_vars);
  for (std::uint64_t m = 0; m < total; ++m) {
    for (int v = 0; v < cnf.num_vars; ++v) valuation[v] = (m >> v) & 1;
    if (cnf_satisfied(cnf, valuation)) return true;
  }
  return false;
}

std::string reduction_map_to_json(const ReductionMap& map) {
  nlohmann::ordered_json doc;
  doc["num_vars"] = map.num_vars;
  doc["num_clauses"] = map.num_clauses;
  doc["false_ids"] = map.false_ids;
  doc["true_ids"] = map.true_ids;
  return doc.dump(2) + "\n";
}

ReductionMap reduction_map_from_json(const std::string& text, const std::string& origin) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    input_error(origin, e.what());
  }
  ReductionMap map;
  try {
    map.num_vars = doc.at("num_vars").get<int>();
    map.num_clauses = doc.at("num_clauses").get<int>();
    map.false_ids = doc.at("false_ids").get<std::vector<std::vector<ActionId>>>();
    map.true_ids = doc.at("true_ids").get<std::vector<std::vector<ActionId>>>();
  } catch (const nlohmann::json::exception& e) {
    input_error(origin, e.what());
  }
  if (static_cast<int>(map.false_ids.size()) != map.num_vars ||
      static_cast<int>(map.true_ids.size()) != map.num_vars)
    input_error(origin, "id tables do not match the variable count");
  for (const auto& row : map.false_ids)
    if (static_cast<int>(row.size()) != map.num_clauses)
      input_error(origin, "id tables do not match the clause count");
  for (const auto& row : map.true_ids)
    if (static_cast<int>(row.size()) != map.num_clauses)
      input_error(origin, "id tables do not match the clause count");
  return map;
}

}  // namespace recon
