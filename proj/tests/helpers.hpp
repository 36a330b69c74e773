#pragma once

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "staircode/betti.hpp"
#include "staircode/core.hpp"
#include "staircode/query.hpp"

namespace staircode::testing {

using GradeSet = std::set<std::pair<double, double>>;

inline GradeSet support(const RankMap& map) {
  GradeSet out;
  for (const auto& [grade, count] : to_real(map)) {
    if (count != 0) out.insert({grade.sigma, grade.eps});
  }
  return out;
}

inline Step step(double sigma, double u) { return Step{sigma, Extended(u), 0, 0}; }

/// Real steps of a staircase as (sigma, u) pairs; u = -1 marks infinity.
inline std::vector<std::pair<double, double>> envelope(const Staircase& s) {
  std::vector<std::pair<double, double>> out;
  for (const Step& st : s.real_steps()) out.push_back({st.sigma, st.u.is_infinite() ? -1.0 : st.u.value()});
  return out;
}

/// Bars as sorted (birth_t, death_t) pairs, death -1 for infinity, rounded to
/// absorb the last bits of parameter arithmetic.
inline std::multiset<std::pair<double, double>> bar_multiset(const std::vector<Bar>& bars) {
  const auto round = [](double v) { return std::round(v * 1e9) / 1e9; };
  std::multiset<std::pair<double, double>> out;
  for (const Bar& b : bars) {
    out.insert({round(b.birth_t), b.death_t.is_infinite() ? -1.0 : round(b.death_t.value())});
  }
  return out;
}

}  // namespace staircode::testing
