#ifndef TCW_ILP_HPP
#define TCW_ILP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcw {

enum class Rel { LessEq, Eq, GreaterEq };

struct IlpVariable {
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

struct IlpConstraint {
  std::vector<std::int64_t> coeffs;  // one per variable
  Rel rel = Rel::LessEq;
  std::int64_t rhs = 0;
};

// Minimization over finitely boxed integer variables. big_penalty is the
// caller's finite stand-in for infinite costs; results at or above it are
// read back as infeasible-at-finite-cost by the caller.
struct IlpInstance {
  std::vector<IlpVariable> variables;
  std::vector<IlpConstraint> constraints;
  std::vector<std::int64_t> objective;
  std::int64_t big_penalty = 0;
};

struct IlpSolution {
  std::vector<std::int64_t> assignment;
  std::int64_t value = 0;
};

// Exact depth-first branch and bound over the variable box. Throws
// std::overflow_error if any intermediate value would wrap, and
// std::invalid_argument on malformed rows.
std::optional<IlpSolution> solve_min(const IlpInstance& inst);

}  // namespace tcw

#endif
