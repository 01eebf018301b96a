#pragma once

#include <cstdint>
#include <vector>

#include "ave/constants.hpp"
#include "ave/split.hpp"

namespace ave {

// The projection onto C2 is multivalued where u_i = v_i > 0; a TieRule picks
// one branch. Both is only legal for the set-valued enumeration call.
enum class TieRule { PreferU, PreferV, Both };

// Pairwise region of a coordinate (a, b):
//   K1: a > b, or a = b <= 0 (the overlap is reported as K1 by convention),
//   K2: a < b,
//   Neither: a = b > 0 (the genuinely multivalued set).
enum class Region : std::uint8_t { Neither = 0, K1 = 1, K2 = 2 };
using RegionPattern = std::vector<Region>;

// Projection of one coordinate pair onto M = {(a,b) : a,b >= 0, ab = 0}.
// One point unless s = t > 0 and rule = Both.
std::vector<Eigen::Vector2d> project_M(double s, double t, TieRule rule);

// Componentwise projection onto C2; rule must be PreferU or PreferV.
SplitPoint project_C2(const SplitPoint& w, TieRule rule = TieRule::PreferU);

// Every element of the (finite) projection set; size 2^(#ties with u_i=v_i>0).
// Throws SizeCap when more than tie_cap coordinates are tied.
std::vector<SplitPoint> enumerate_project_C2(const SplitPoint& w,
                                             int tie_cap = tol::tie_cap);

// Orthogonal projection onto C1: w - T^+ (T w - sqrt(2) c).
SplitPoint project_C1(const SplitSpace& space, const SplitPoint& w);

RegionPattern region_of(const SplitPoint& w);

}  // namespace ave
