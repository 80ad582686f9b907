#pragma once

#include <string>

#include "recon/problem.hpp"

namespace recon {

// Instance files are JSON documents:
//   {"name": str, "n": int, "actions": [str]*, "deps": [[i,j]...],
//    "precs": [[i,j]...], "logs": [[id...]...]*}        (* = optional)
// Indices are 0-based. Duplicate constraint pairs are dropped on load;
// structural problems raise std::invalid_argument with the file name.

Problem problem_from_json(const std::string& text,
                          const std::string& origin = "<memory>");
std::string problem_to_json(const Problem& p);  // byte-deterministic
Problem load_problem(const std::string& path);
void save_problem(const std::string& path, const Problem& p);

/// Schedule interchange document, written by the solve/ls commands and read
/// back by check and decode. positions use 0 for rejected actions.
struct ScheduleDoc {
  std::string instance;
  int n = 0;
  int value = 0;
  bool proved = false;
  Schedule schedule;
};

ScheduleDoc schedule_doc_from_json(const std::string& text,
                                   const std::string& origin = "<memory>");
std::string schedule_doc_to_json(const ScheduleDoc& doc);
ScheduleDoc load_schedule_doc(const std::string& path);
void save_schedule_doc(const std::string& path, const ScheduleDoc& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace recon
