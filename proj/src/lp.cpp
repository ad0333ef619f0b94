#include "toric/lp.hpp"

#include "toric/error.hpp"

#include <limits>
#include <optional>

namespace toric::lp {

namespace {

constexpr std::size_t kArtificial = std::numeric_limits<std::size_t>::max() / 2;
constexpr std::size_t kStallLimit = 50;

// Tableau of D A x = D b (D flips rows with negative b) started from an
// artificial basis. The artificial block holds B^{-1} D, so columns can be
// appended at any time.
class Tableau {
 public:
  explicit Tableau(const RatPoint& b) : m_(b.size()), flipped_(m_), s_(m_), art_(m_), rhs_(m_), basis_(m_) {
    for (std::size_t r = 0; r < m_; ++r) {
      flipped_[r] = b[r] < 0;
      rhs_[r] = flipped_[r] ? Rational(-b[r]) : b[r];
      art_[r].assign(m_, Rational(0));
      art_[r][r] = 1;
      basis_[r] = kArtificial + r;
    }
  }

  void add_column(const RatPoint& a, const Rational& cost) {
    if (a.size() != m_) throw Error(ErrorKind::InvalidInput, "LP column length mismatch");
    RatPoint da(m_);
    for (std::size_t r = 0; r < m_; ++r) da[r] = flipped_[r] ? Rational(-a[r]) : a[r];
    for (std::size_t r = 0; r < m_; ++r) {
      Rational e = 0;
      for (std::size_t t = 0; t < m_; ++t)
        if (art_[r][t] != 0 && da[t] != 0) e += art_[r][t] * da[t];
      s_[r].push_back(std::move(e));
    }
    cost_.push_back(cost);
  }

  std::size_t columns() const { return cost_.size(); }

  Rational cost_of(std::size_t id, bool phase1) const {
    if (id >= kArtificial) return phase1 ? Rational(1) : Rational(0);
    return phase1 ? Rational(0) : cost_[id];
  }

  Rational objective(bool phase1) const {
    Rational s = 0;
    for (std::size_t r = 0; r < m_; ++r) s += cost_of(basis_[r], phase1) * rhs_[r];
    return s;
  }

  Status run(bool phase1) {
    std::size_t stalled = 0;
    Rational last = objective(phase1);
    while (true) {
      if (phase1 && last == 0) return Status::Optimal;
      const std::size_t n = columns();
      RatPoint d(cost_.size());
      for (std::size_t j = 0; j < n; ++j) d[j] = cost_of(j, phase1);
      for (std::size_t r = 0; r < m_; ++r) {
        const Rational cb = cost_of(basis_[r], phase1);
        if (cb == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (s_[r][j] != 0) d[j] -= cb * s_[r][j];
      }
      const bool bland = stalled >= kStallLimit;
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[j] >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (!enter || d[j] < d[*enter]) enter = j;
      }
      if (!enter) return Status::Optimal;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        const Rational& e = s_[r][*enter];
        Rational ratio;
        if (!phase1 && basis_[r] >= kArtificial && e != 0) {
          ratio = 0;  // artificial stuck at zero: pivot it out rather than let it move
        } else if (e > 0) {
          ratio = rhs_[r] / e;
        } else {
          continue;
        }
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return Status::Unbounded;
      pivot(*leave, *enter);
      const Rational now = objective(phase1);
      stalled = now < last ? 0 : stalled + 1;
      last = now;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / s_[row][col];
    auto scale_row = [&](RatPoint& v) {
      for (auto& x : v)
        if (x != 0) x *= inv;
    };
    scale_row(s_[row]);
    scale_row(art_[row]);
    rhs_[row] *= inv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row || s_[r][col] == 0) continue;
      const Rational f = s_[r][col];
      for (std::size_t j = 0; j < s_[r].size(); ++j)
        if (s_[row][j] != 0) s_[r][j] -= f * s_[row][j];
      for (std::size_t j = 0; j < m_; ++j)
        if (art_[row][j] != 0) art_[r][j] -= f * art_[row][j];
      if (rhs_[row] != 0) rhs_[r] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  // Basic artificials sit at zero after phase I; swap them for structural columns where possible.
  void expel_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < kArtificial) continue;
      for (std::size_t j = 0; j < columns(); ++j) {
        if (s_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(columns(), Rational(0));
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < kArtificial) x[basis_[r]] = rhs_[r];
    return x;
  }

  // π = D (B^{-1})ᵀ c_B, read from the artificial block.
  std::vector<Rational> duals() const {
    std::vector<Rational> pi(m_, Rational(0));
    for (std::size_t s = 0; s < m_; ++s) {
      const Rational cb = cost_of(basis_[s], false);
      if (cb == 0) continue;
      for (std::size_t r = 0; r < m_; ++r)
        if (art_[s][r] != 0) pi[r] += cb * art_[s][r];
    }
    for (std::size_t r = 0; r < m_; ++r)
      if (flipped_[r]) pi[r] = -pi[r];
    return pi;
  }

 private:
  std::size_t m_;
  std::vector<bool> flipped_;
  std::vector<RatPoint> s_;
  std::vector<RatPoint> art_;
  RatPoint rhs_;
  RatPoint cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

StandardResult solve_standard(const std::vector<RatPoint>& a, const RatPoint& b, const RatPoint& c) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "LP row count mismatch");
  Tableau tab(b);
  for (std::size_t j = 0; j < c.size(); ++j) {
    RatPoint col(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (a[r].size() != c.size()) throw Error(ErrorKind::InvalidInput, "LP cost length mismatch");
      col[r] = a[r][j];
    }
    tab.add_column(col, c[j]);
  }
  StandardResult res;
  tab.run(true);
  if (tab.objective(true) != 0) return res;
  tab.expel_artificials();
  res.status = tab.run(false);
  if (res.status != Status::Optimal) return res;
  res.objective = tab.objective(false);
  res.x = tab.primal();
  res.duals = tab.duals();
  return res;
}

struct InequalityLP::Impl {
  explicit Impl(const RatPoint& c) : dim(c.size()), tableau(c) {}
  std::size_t dim;
  Tableau tableau;
  bool feasible_basis = false;
};

InequalityLP::InequalityLP(const RatPoint& c) : impl_(std::make_unique<Impl>(c)) {}
InequalityLP::~InequalityLP() = default;
InequalityLP::InequalityLP(InequalityLP&&) noexcept = default;
InequalityLP& InequalityLP::operator=(InequalityLP&&) noexcept = default;

void InequalityLP::add_row(const RatPoint& g, const Rational& h) {
  if (g.size() != impl_->dim) throw Error(ErrorKind::InvalidInput, "LP row length mismatch");
  impl_->tableau.add_column(g, -h);
}

std::size_t InequalityLP::row_count() const { return impl_->tableau.columns(); }

InequalityResult InequalityLP::solve() {
  // Dual: min -hᵀλ s.t. Gᵀλ = c, λ >= 0; its multipliers π give z = -π.
  auto& tab = impl_->tableau;
  InequalityResult out;
  if (!impl_->feasible_basis) {
    tab.run(true);
    if (tab.objective(true) != 0) {
      out.status = Status::Unbounded;  // primal unbounded or infeasible; callers guarantee feasibility
      return out;
    }
    impl_->feasible_basis = true;
  }
  tab.expel_artificials();
  if (tab.run(false) == Status::Unbounded) {
    out.status = Status::Infeasible;
    return out;
  }
  out.status = Status::Optimal;
  out.objective = -tab.objective(false);
  for (const auto& p : tab.duals()) out.z.push_back(-p);
  return out;
}

InequalityResult minimize(const std::vector<RatPoint>& g, const RatPoint& h, const RatPoint& c) {
  InequalityLP lp(c);
  for (std::size_t r = 0; r < g.size(); ++r) lp.add_row(g[r], h[r]);
  return lp.solve();
}

}  // namespace toric::lp
