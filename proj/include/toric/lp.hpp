#pragma once

#include "toric/rational.hpp"

#include <cstddef>
#include <memory>
#include <vector>

// Exact rational simplex (dense tableau, two phases, Dantzig pricing with a
// Bland fallback against cycling).
namespace toric::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct StandardResult {
  Status status = Status::Infeasible;
  Rational objective;
  std::vector<Rational> x;
  /// Optimal multipliers π of A x = b (reduced costs c - Aᵀπ >= 0).
  std::vector<Rational> duals;
};

/// minimize cᵀx subject to A x = b, x >= 0.
StandardResult solve_standard(const std::vector<RatPoint>& a, const RatPoint& b, const RatPoint& c);

struct InequalityResult {
  Status status = Status::Infeasible;
  Rational objective;
  RatPoint z;
};

/// minimize cᵀz subject to G z >= h with z free, solved through the dual
/// (one row per variable, one column per constraint). Rows added after a
/// solve become dual columns, so the next solve starts from the last basis.
class InequalityLP {
 public:
  explicit InequalityLP(const RatPoint& c);
  ~InequalityLP();
  InequalityLP(InequalityLP&&) noexcept;
  InequalityLP& operator=(InequalityLP&&) noexcept;

  void add_row(const RatPoint& g, const Rational& h);
  std::size_t row_count() const;
  InequalityResult solve();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

InequalityResult minimize(const std::vector<RatPoint>& g, const RatPoint& h, const RatPoint& c);

}  // namespace toric::lp
