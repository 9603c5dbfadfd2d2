#pragma once

// Acceptance suite: one check per criterion, each with its own oracle.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace steklov::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::function<CriterionResult()> run;
};

std::vector<Criterion> criteria();

/// Runs every criterion, printing one PASS/FAIL line each. Returns the number
/// of failures.
int run_all(std::ostream& out);

}  // namespace steklov::acceptance
