#include "recon/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace recon {
namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void input_error(const std::string& origin, const std::string& what) {
  throw std::invalid_argument(origin + ": " + what);
}

std::vector<IdPair> parse_pairs(const ordered_json& arr, const std::string& origin,
                                const char* field) {
  std::vector<IdPair> out;
  if (!arr.is_array()) input_error(origin, std::string(field) + " must be an array");
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      input_error(origin, std::string(field) + " entries must be [i, j] integer pairs");
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

}  // namespace

Problem problem_from_json(const std::string& text, const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    input_error(origin, e.what());
  }
  if (!doc.is_object()) input_error(origin, "top-level value must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    input_error(origin, "missing integer field \"n\"");

  Problem p;
  p.n = doc["n"].get<int>();
  if (doc.contains("name")) p.name = doc["name"].get<std::string>();
  if (doc.contains("actions")) {
    for (const auto& s : doc["actions"]) p.names.push_back(s.get<std::string>());
  }
  if (doc.contains("deps")) p.deps = parse_pairs(doc["deps"], origin, "deps");
  if (doc.contains("precs")) p.precs = parse_pairs(doc["precs"], origin, "precs");
  if (doc.contains("logs")) {
    for (const auto& log : doc["logs"]) {
      std::vector<ActionId> ids;
      for (const auto& a : log) ids.push_back(a.get<int>());
      p.logs.push_back(std::move(ids));
    }
  }

  auto issues = validate_problem(p);
  if (!issues.empty()) {
    std::string msg = "invalid instance";
    for (const auto& s : issues) msg += "\n  " + s;
    input_error(origin, msg);
  }
  dedup_constraints(p);
  return p;
}

std::string problem_to_json(const Problem& p) {
  ordered_json doc;
  doc["name"] = p.name;
  doc["n"] = p.n;
  if (!p.names.empty()) doc["actions"] = p.names;
  auto pairs = [](const std::vector<IdPair>& v) {
    ordered_json arr = ordered_json::array();
    for (auto [i, j] : v) arr.push_back({i, j});
    return arr;
  };
  doc["deps"] = pairs(p.deps);
  doc["precs"] = pairs(p.precs);
  if (!p.logs.empty()) doc["logs"] = p.logs;
  return doc.dump(2) + "\n";
}

Problem load_problem(const std::string& path) {
  return problem_from_json(read_file(path), path);
}

void save_problem(const std::string& path, const Problem& p) {
  write_file(path, problem_to_json(p));
}

ScheduleDoc schedule_doc_from_json(const std::string& text, const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    input_error(origin, e.what());
  }
  ScheduleDoc out;
  try {
    out.instance = doc.value("instance", std::string{});
    out.n = doc.at("n").get<int>();
    out.proved = doc.value("proved", false);
    out.schedule.accepted = doc.at("accepted").get<std::vector<bool>>();
    out.schedule.position = doc.at("positions").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    input_error(origin, e.what());
  }
  if (static_cast<int>(out.schedule.accepted.size()) != out.n ||
      static_cast<int>(out.schedule.position.size()) != out.n)
    input_error(origin, "accepted/positions arrays must have exactly n entries");
  out.value = objective(out.schedule);
  if (doc.contains("value") && doc["value"].get<int>() != out.value)
    input_error(origin, "stated value does not match the accepted flags");
  return out;
}

std::string schedule_doc_to_json(const ScheduleDoc& doc) {
  ordered_json j;
  j["instance"] = doc.instance;
  j["n"] = doc.n;
  j["value"] = doc.value;
  j["proved"] = doc.proved;
  j["accepted"] = doc.schedule.accepted;
  j["positions"] = doc.schedule.position;
  return j.dump(2) + "\n";
}

ScheduleDoc load_schedule_doc(const std::string& path) {
  return schedule_doc_from_json(read_file(path), path);
}

void save_schedule_doc(const std::string& path, const ScheduleDoc& doc) {
  write_file(path, schedule_doc_to_json(doc));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::invalid_argument(path + ": write failed");
}

}  // namespace recon
