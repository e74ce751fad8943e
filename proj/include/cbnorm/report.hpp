#pragma once

#include "cbnorm/complex_matrix.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cbnorm {

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Named check results with an overall verdict (conjunction of pass flags).
struct CertificationReport {
  std::vector<Check> checks;
  std::map<std::string, ComplexMatrix> witnesses;
  std::map<std::string, double> values;

  void add(const std::string& name, double residual, double tol) {
    checks.push_back({name, residual, tol, residual <= tol});
  }

  void add_flag(const std::string& name, bool pass, double residual, double tol) {
    checks.push_back({name, residual, tol, pass});
  }

  bool verdict() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

}  // namespace cbnorm
