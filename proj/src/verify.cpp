#include "staircode/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "staircode/betti.hpp"
#include "staircode/datasets.hpp"
#include "staircode/oracle.hpp"
#include "staircode/pipeline.hpp"
#include "staircode/query.hpp"

namespace staircode::oracle {

namespace {

std::string describe(const Line& line) {
  std::ostringstream s;
  s.precision(17);
  s << line.origin().sigma << ',' << line.origin().eps << ':' << line.anchor_b().sigma << ','
    << line.anchor_b().eps;
  return s.str();
}

bool same_counts(const RankMap& a, const RankMap& b) {
  if (a.size() != b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
    return x.first == y.first && x.second.count == y.second.count && x.second.grade == y.second.grade;
  });
}

bool same_bars(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].owner != b[k].owner || a[k].birth_t != b[k].birth_t || !(a[k].death_t == b[k].death_t)) return false;
  }
  return true;
}

}  // namespace

bool betti_supports_disjoint(const GradedBetti& betti) {
  std::set<RankGrade> seen;
  for (const auto& map : betti.beta) {
    for (const auto& [rank, entry] : map) {
      if (entry.count != 1 || !seen.insert(rank).second) return false;
    }
  }
  return true;
}

VerifyReport verify_dataset(const AugmentedMetricSpace& space, const VerifyOptions& options) {
  std::vector<PointIndex> seq(space.size());
  for (PointIndex i = 0; i < seq.size(); ++i) seq[i] = i;
  std::stable_sort(seq.begin(), seq.end(),
                   [&](PointIndex a, PointIndex b) { return space.filter(a) < space.filter(b); });
  return verify_dataset(space, seq, options);
}

VerifyReport verify_dataset(const AugmentedMetricSpace& space, const std::vector<PointIndex>& point_sequence,
                            const VerifyOptions& options) {
  VerifyReport report;
  const auto check = [&](bool ok, const std::string& what) {
    ++report.checks;
    if (!ok) report.mismatches.push_back(what);
  };

  const GradeGrid grid(space, point_sequence);
  const Staircode code = compute_staircode_ordered(space, point_sequence, options.mode);
  const Staircode ref = oracle_staircode(grid, space);
  for (PointIndex x = 0; x < space.size(); ++x) {
    check(code.staircase(x) == ref.staircase(x), "staircase of " + space.id(x) + " differs from the oracle");
  }

  const GradedBetti betti = graded_betti(code);
  const GradedBetti ref_betti = oracle_betti(grid);
  for (int j = 0; j < 3; ++j) {
    check(same_counts(betti.beta[j], ref_betti.beta[j]), "beta_" + std::to_string(j) + " differs from the oracle");
  }
  check(betti_supports_disjoint(ref_betti), "oracle Betti numbers exceed 1 or overlap");
  std::set<RankGrade> negative;
  for (const auto& e : classify_edges(grid)) {
    if (e.negative) negative.insert(e.birth);
  }
  std::set<RankGrade> beta1;
  for (const auto& [rank, entry] : ref_betti.beta[1]) beta1.insert(rank);
  check(negative == beta1, "negative edges do not match the beta_1 support");

  for (std::uint32_t s = 1; s <= grid.point_count(); ++s) {
    for (std::uint64_t e = 0; e <= grid.pair_count(); ++e) {
      const Grade g = grid.real({s, e});
      const auto expected = static_cast<std::int64_t>(grid.components_at(g));
      check(dimension_function(code, g) == expected && dimension_function(betti, g) == expected,
            "dimension function at (" + std::to_string(g.sigma) + "," + std::to_string(g.eps) + ")");
      for (const auto& entry : code.entries()) {
        std::int64_t sum = 0;
        for (const Corner& c : entry.base.corners()) {
          if (c.grade.sigma <= g.sigma && c.grade.eps <= g.eps) sum += c.type == 1 ? -1 : 1;
        }
        check(sum == (entry.base.contains(g) ? 1 : 0),
              "corner inclusion-exclusion fails for " + space.id(entry.base.owner()));
      }
    }
  }

  std::mt19937_64 rng(options.seed);
  const FiberedQueryIndex index(code);
  for (std::size_t k = 0; k < options.lines; ++k) {
    const Line line = datasets::random_line(space, rng);
    const std::string where = " on line " + describe(line);
    check(index.report(line) == index.report_linear(line), "index report differs from a scan" + where);
    const auto bars = query_barcode(index, line);
    check(same_bars(bars, oracle_line_barcode(grid, space, line)), "barcode differs from the sweep" + where);

    const Treegram tree = query_treegram(code, line);
    std::vector<Bar> elder;
    for (const auto& b : elder_rule_barcode(tree, code.order())) {
      if (b.death.exceeds(b.birth)) elder.push_back({b.owner, b.birth, b.death, {}, std::nullopt});
    }
    std::sort(elder.begin(), elder.end(), [](const Bar& x, const Bar& y) {
      return x.birth_t != y.birth_t ? x.birth_t < y.birth_t : x.owner < y.owner;
    });
    check(same_bars(bars, elder), "fibered treegram barcode differs" + where);

    std::vector<double> times;
    for (const auto& l : tree.leaves()) times.push_back(l.birth);
    for (const auto& m : tree.merges()) times.push_back(m.height);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<double> samples;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) samples.push_back(0.5 * (times[i] + times[i + 1]));
    samples.push_back(times.back() + 1.0);
    for (double t : samples) {
      check(tree.blocks_at(t) == grid.blocks_at(line.point_at(t)),
            "fibered treegram blocks at t=" + std::to_string(t) + where);
    }
  }
  return report;
}

}  // namespace staircode::oracle
