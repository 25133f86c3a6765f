#include "tcw/ilp.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcw {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("ilp: multiplication overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("ilp: addition overflow");
  return r;
}

struct Searcher {
  const IlpInstance& inst;
  int p;                               // variable count
  std::vector<std::int64_t> cur;       // partial assignment
  std::vector<std::int64_t> best_assign;
  std::int64_t best = 0;
  bool found = false;

  // per-constraint running sum of assigned terms
  std::vector<std::int64_t> csum;
  // per-constraint min/max contribution of the still-unassigned suffix
  std::vector<std::vector<std::int64_t>> suffix_min, suffix_max;
  // objective: running sum + optimistic suffix completion
  std::int64_t osum = 0;
  std::vector<std::int64_t> obj_suffix_min;

  explicit Searcher(const IlpInstance& i) : inst(i) {
    p = static_cast<int>(inst.variables.size());
    if (static_cast<int>(inst.objective.size()) != p)
      throw std::invalid_argument("ilp: objective row length mismatch");
    for (const auto& c : inst.constraints)
      if (static_cast<int>(c.coeffs.size()) != p)
        throw std::invalid_argument("ilp: constraint row length mismatch");
    for (const auto& v : inst.variables)
      if (v.lower > v.upper)
        throw std::invalid_argument("ilp: empty variable range");

    const int q = static_cast<int>(inst.constraints.size());
    csum.assign(q, 0);
    suffix_min.assign(q, std::vector<std::int64_t>(p + 1, 0));
    suffix_max.assign(q, std::vector<std::int64_t>(p + 1, 0));
    obj_suffix_min.assign(p + 1, 0);
    for (int j = p - 1; j >= 0; --j) {
      const auto& var = inst.variables[j];
      for (int ci = 0; ci < q; ++ci) {
        std::int64_t a = checked_mul(inst.constraints[ci].coeffs[j], var.lower);
        std::int64_t b = checked_mul(inst.constraints[ci].coeffs[j], var.upper);
        suffix_min[ci][j] = checked_add(suffix_min[ci][j + 1], std::min(a, b));
        suffix_max[ci][j] = checked_add(suffix_max[ci][j + 1], std::max(a, b));
      }
      std::int64_t oa = checked_mul(inst.objective[j], var.lower);
      std::int64_t ob = checked_mul(inst.objective[j], var.upper);
      obj_suffix_min[j] = checked_add(obj_suffix_min[j + 1], std::min(oa, ob));
    }
    cur.assign(p, 0);
  }

  bool prune(int depth) const {
    for (size_t ci = 0; ci < inst.constraints.size(); ++ci) {
      const auto& c = inst.constraints[ci];
      std::int64_t lo = checked_add(csum[ci], suffix_min[ci][depth]);
      std::int64_t hi = checked_add(csum[ci], suffix_max[ci][depth]);
      switch (c.rel) {
        case Rel::LessEq:
          if (lo > c.rhs) return true;
          break;
        case Rel::GreaterEq:
          if (hi < c.rhs) return true;
          break;
        case Rel::Eq:
          if (lo > c.rhs || hi < c.rhs) return true;
          break;
      }
    }
    if (found &&
        checked_add(osum, obj_suffix_min[depth]) >= best)
      return true;
    return false;
  }

  void run(int depth) {
    if (prune(depth)) return;
    if (depth == p) {
      // suffix bounds are exact here, so constraints already hold
      if (!found || osum < best) {
        found = true;
        best = osum;
        best_assign = cur;
      }
      return;
    }
    const auto& var = inst.variables[depth];
    for (std::int64_t x = var.lower; x <= var.upper; ++x) {
      cur[depth] = x;
      std::int64_t osave = osum;
      std::vector<std::int64_t> saved = csum;
      osum = checked_add(osum, checked_mul(inst.objective[depth], x));
      for (size_t ci = 0; ci < inst.constraints.size(); ++ci)
        csum[ci] = checked_add(
            csum[ci], checked_mul(inst.constraints[ci].coeffs[depth], x));
      run(depth + 1);
      osum = osave;
      csum = saved;
    }
  }
};

}  // namespace

std::optional<IlpSolution> solve_min(const IlpInstance& inst) {
  Searcher s(inst);
  s.run(0);
  if (!s.found) return std::nullopt;
  return IlpSolution{s.best_assign, s.best};
}

}  // namespace tcw
