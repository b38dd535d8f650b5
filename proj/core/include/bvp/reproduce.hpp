#pragma once

#include <string>
#include <vector>

#include "bvp/problem_spec.hpp"
#include "bvp/solver.hpp"

namespace bvp {

// Built-in worked examples. Each id maps to a complete problem file kept as
// a string literal, together with independently derived expected values used
// by the reproduce command and the acceptance suite.
const std::vector<std::string>& builtin_example_ids();
bool is_builtin_example(const std::string& id);
// Throws std::out_of_range for unknown ids.
const std::string& builtin_example_text(const std::string& id);

struct ValueCheck {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct ReproduceReport {
  std::string example_id;
  std::vector<ValueCheck> values;          // 1e-9 relative agreement each
  std::vector<std::string> expected_certificates;  // subset of fired
  std::vector<std::string> fired_certificates;
  bool certificates_pass = false;
  bool ran_solver = false;
  std::vector<double> solution_norms;      // positive solutions, ascending
  bool solve_pass = false;
  std::string solve_requirement;           // human-readable solve criterion
  bool pass = false;
};

inline constexpr double kReproduceRelTol = 1e-9;

// Parses the built-in example, recomputes constants, witnesses and
// certificates, optionally runs the solver, and compares everything against
// the expected table.
ReproduceReport run_reproduce(const std::string& id, bool with_solve);

}  // namespace bvp
