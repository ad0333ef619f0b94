#include "toric/dd.hpp"

#include "toric/error.hpp"
#include "toric/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>

namespace toric::dd {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
  IntegerVector x;
  Bits tight;
};

Integer inner(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

}  // namespace

IntegerVector integral_row(const RatPoint& row) { return linalg::primitive_integer(row); }

std::vector<IntegerVector> extreme_rays(const std::vector<IntegerVector>& rows, std::size_t max_rays) {
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, "cone has no constraints");
  const std::size_t d = rows.front().size();
  const std::size_t m = rows.size();

  // Greedy initial basis in input order.
  std::vector<std::size_t> basis;
  linalg::RatMatrix echelon;
  for (std::size_t k = 0; k < m && basis.size() < d; ++k) {
    linalg::RatMatrix trial = echelon;
    RatPoint r;
    for (const auto& x : rows[k]) r.emplace_back(x);
    trial.push_back(r);
    if (linalg::rank(trial) > echelon.size()) {
      echelon.push_back(std::move(r));
      basis.push_back(k);
    }
  }
  if (basis.size() < d) throw Error(ErrorKind::InvalidInput, "cone is not pointed");

  // Initial rays: columns of the inverse of the basis block.
  std::vector<Ray> rays;
  std::vector<bool> processed(m, false);
  for (auto k : basis) processed[k] = true;
  for (std::size_t j = 0; j < d; ++j) {
    RatPoint e = zero_point(d);
    e[j] = 1;
    auto x = linalg::solve_square(echelon, e);
    Ray ray{integral_row(*x), Bits(m)};
    for (std::size_t t = 0; t < d; ++t)
      if (t != j) ray.tight.set(basis[t]);
    rays.push_back(std::move(ray));
  }

  std::size_t processed_count = d;
  for (std::size_t k = 0; k < m; ++k) {
    if (processed[k]) continue;
    const auto& a = rows[k];
    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = inner(a, rays[r].x);
      if (value[r] > 0) pos.push_back(r);
      else if (value[r] < 0) neg.push_back(r);
      else rays[r].tight.set(k);
    }
    processed[k] = true;
    ++processed_count;
    if (neg.empty()) continue;

    std::vector<Ray> created;
    for (auto p : pos) {
      for (auto n : neg) {
        Bits common = rays[p].tight & rays[n].tight;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.is_subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        IntegerVector x(d);
        const Integer& vp = value[p];
        const Integer vn = -value[n];
        for (std::size_t c = 0; c < d; ++c) x[c] = vp * rays[n].x[c] + vn * rays[p].x[c];
        make_primitive(x);
        common.set(k);
        created.push_back(Ray{std::move(x), std::move(common)});
      }
    }
    std::vector<Ray> next;
    next.reserve(rays.size() - neg.size() + created.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (value[r] >= 0) next.push_back(std::move(rays[r]));
    for (auto& c : created) next.push_back(std::move(c));
    rays = std::move(next);
    if (rays.size() > max_rays) {
      throw Error(ErrorKind::TooLarge, "double description exceeded " + std::to_string(max_rays) +
                                           " rays after " + std::to_string(processed_count) + " of " +
                                           std::to_string(m) + " constraints");
    }
  }

  std::vector<IntegerVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace toric::dd
