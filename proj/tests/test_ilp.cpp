#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "tcw/ilp.hpp"

using namespace tcw;

namespace {

IlpInstance small(std::vector<std::pair<int, int>> boxes,
                  std::vector<std::int64_t> objective) {
  IlpInstance inst;
  for (auto [lo, hi] : boxes) inst.variables.push_back({"", lo, hi});
  inst.objective = std::move(objective);
  return inst;
}

// exhaustive reference over the full box
std::optional<std::int64_t> enumerate_min(const IlpInstance& inst) {
  std::vector<std::int64_t> cur(inst.variables.size());
  std::optional<std::int64_t> best;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == inst.variables.size()) {
      for (const auto& c : inst.constraints) {
        std::int64_t lhs = 0;
        for (size_t j = 0; j < cur.size(); ++j) lhs += c.coeffs[j] * cur[j];
        bool ok = c.rel == Rel::LessEq      ? lhs <= c.rhs
                  : c.rel == Rel::GreaterEq ? lhs >= c.rhs
                                            : lhs == c.rhs;
        if (!ok) return;
      }
      std::int64_t val = 0;
      for (size_t j = 0; j < cur.size(); ++j) val += inst.objective[j] * cur[j];
      if (!best || val < *best) best = val;
      return;
    }
    for (std::int64_t x = inst.variables[i].lower;
         x <= inst.variables[i].upper; ++x) {
      cur[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST_CASE("one variable with a lower bound constraint") {
  auto inst = small({{0, 10}}, {1});
  inst.constraints.push_back({{1}, Rel::GreaterEq, 3});
  auto sol = solve_min(inst);
  REQUIRE(sol.has_value());
  CHECK(sol->value == 3);
  CHECK(sol->assignment[0] == 3);
}

TEST_CASE("two variables sharing a covering constraint") {
  auto inst = small({{0, 2}, {0, 5}}, {1, 1});
  inst.constraints.push_back({{1, 1}, Rel::GreaterEq, 3});
  auto sol = solve_min(inst);
  REQUIRE(sol.has_value());
  CHECK(sol->value == 3);
}

TEST_CASE("contradictory constraints are infeasible") {
  auto inst = small({{0, 1}}, {1});
  inst.constraints.push_back({{1}, Rel::GreaterEq, 1});
  inst.constraints.push_back({{1}, Rel::LessEq, 0});
  CHECK_FALSE(solve_min(inst).has_value());
}

TEST_CASE("returned assignments satisfy every constraint exactly") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    std::uniform_int_distribution<int> vars(1, 4), cons(0, 4), coef(-4, 4),
        box(0, 6);
    IlpInstance inst;
    int p = vars(rng);
    for (int i = 0; i < p; ++i) {
      int lo = coef(rng);
      inst.variables.push_back({"", lo, lo + box(rng)});
      inst.objective.push_back(coef(rng));
    }
    int q = cons(rng);
    for (int i = 0; i < q; ++i) {
      IlpConstraint c;
      for (int j = 0; j < p; ++j) c.coeffs.push_back(coef(rng));
      c.rel = std::array<Rel, 3>{Rel::LessEq, Rel::Eq,
                                 Rel::GreaterEq}[rng() % 3];
      c.rhs = coef(rng);
      inst.constraints.push_back(c);
    }
    auto sol = solve_min(inst);
    auto ref = enumerate_min(inst);
    CHECK(sol.has_value() == ref.has_value());
    if (sol && ref) {
      CHECK(sol->value == *ref);
      for (const auto& c : inst.constraints) {
        std::int64_t lhs = 0;
        for (size_t j = 0; j < sol->assignment.size(); ++j)
          lhs += c.coeffs[j] * sol->assignment[j];
        bool ok = c.rel == Rel::LessEq      ? lhs <= c.rhs
                  : c.rel == Rel::GreaterEq ? lhs >= c.rhs
                                            : lhs == c.rhs;
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("malformed rows are rejected") {
  auto inst = small({{0, 1}, {0, 1}}, {1, 1});
  inst.constraints.push_back({{1}, Rel::LessEq, 1});  // short row
  CHECK_THROWS_AS(solve_min(inst), std::invalid_argument);
}
