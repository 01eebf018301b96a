#include "ave/projections.hpp"

#include <algorithm>
#include <cstdint>

namespace ave {

std::vector<Eigen::Vector2d> project_M(double s, double t, TieRule rule) {
  std::vector<Eigen::Vector2d> out;
  if (s > t) {
    out.emplace_back(std::max(s, 0.0), 0.0);
  } else if (s < t) {
    out.emplace_back(0.0, std::max(t, 0.0));
  } else if (s > 0) {  // tie above zero: both branches are nearest
    if (rule != TieRule::PreferV) out.emplace_back(s, 0.0);
    if (rule != TieRule::PreferU) out.emplace_back(0.0, t);
  } else {
    // tie at or below zero (and the s = t = NaN case): the origin
    out.emplace_back(0.0, 0.0);
  }
  return out;
}

SplitPoint project_C2(const SplitPoint& w, TieRule rule) {
  if (rule == TieRule::Both)
    throw BadShape("project_C2 needs a single-valued tie rule");
  const Index n = w.size();
  SplitPoint r = SplitPoint::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double s = w.u(i), t = w.v(i);
    if (s > t) {
      r.u(i) = std::max(s, 0.0);
    } else if (s < t) {
      r.v(i) = std::max(t, 0.0);
    } else if (s > 0) {
      (rule == TieRule::PreferU ? r.u(i) : r.v(i)) = s;
    }
  }
  return r;
}

std::vector<SplitPoint> enumerate_project_C2(const SplitPoint& w, int tie_cap) {
  std::vector<Index> ties;
  for (Index i = 0; i < w.size(); ++i)
    if (w.u(i) == w.v(i) && w.u(i) > 0) ties.push_back(i);
  if (static_cast<int>(ties.size()) > tie_cap)
    throw SizeCap("projection set would have more than 2^tie_cap elements");

  const SplitPoint base = project_C2(w, TieRule::PreferU);
  std::vector<SplitPoint> out;
  out.reserve(std::size_t{1} << ties.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ties.size()); ++mask) {
    SplitPoint p = base;
    for (std::size_t b = 0; b < ties.size(); ++b) {
      if (mask >> b & 1) {  // flip this tie to the v branch
        p.v(ties[b]) = p.u(ties[b]);
        p.u(ties[b]) = 0;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

SplitPoint project_C1(const SplitSpace& space, const SplitPoint& w) {
  return w - space.least_squares(space.apply(w) - space.rhs());
}

RegionPattern region_of(const SplitPoint& w) {
  RegionPattern r(static_cast<std::size_t>(w.size()), Region::Neither);
  for (Index i = 0; i < w.size(); ++i) {
    const double a = w.u(i), b = w.v(i);
    if (a > b || (a == b && a <= 0))
      r[static_cast<std::size_t>(i)] = Region::K1;
    else if (a < b)
      r[static_cast<std::size_t>(i)] = Region::K2;
  }
  return r;
}

}  // namespace ave
