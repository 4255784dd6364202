#pragma once

// Planes in G(4,2) as pairs of unit 3-vectors.
//
// R^4 is identified with the quaternions, x = x0 + x1 i + x2 j + x3 k. The
// reflection fixing a plane P and negating its complement acts as
// x -> conj(l) x r for purely imaginary unit quaternions l, r, determined up to
// a common sign. We store (l, r) as 3-vectors with the sign fixed so that the
// first nonzero coordinate of l is positive.
//
// Given a left code L and a right code R (antipodal multisets of 2N points on
// S^2), a matching f: L -> R with f(-p) = -f(p) yields N planes whose minimum
// squared chordal distance is min over orbits a < b of
// 1 - (p_a . p_b)(f(p_a) . f(p_b)).

#include <Eigen/Geometry>

#include <optional>
#include <vector>

#include "grasspack/core.hpp"

namespace grasspack {

struct BinocularPair {
  Eigen::Vector3d left;
  Eigen::Vector3d right;
};

/// Flips (l, r) -> (-l, -r) if needed so the first nonzero coordinate of l
/// is positive.
BinocularPair canonical(const BinocularPair& pair);

BinocularPair plane_to_lr(const Planed& plane);
Planed lr_to_plane(const BinocularPair& pair);

struct LrDistances {
  double theta1 = 0;  // smaller principal angle
  double theta2 = 0;
  double chordal_sq = 0;
  double geodesic_sq = 0;
};

/// Principal angles and distances straight from the two pairs.
LrDistances lr_distances(const BinocularPair& a, const BinocularPair& b);

/// Tolerance used when comparing a pair value against the threshold M.
inline constexpr double kMatchingTol = 1e-12;

struct Matching {
  std::vector<Eigen::Vector3d> left;
  std::vector<Eigen::Vector3d> right;
  /// perm[i] is the index in `right` that left point i is sent to.
  std::vector<Index> perm;
  /// Minimum squared chordal distance of the planes; +inf when there is a
  /// single orbit and so no pairs.
  double objective = 0;
};

/// Finds a matching whose every orbit pair has value >= min_value (within
/// kMatchingTol), i.e. no pair with 1 - (p.q)(f(p).f(q)) < min_value.
/// Returns nullopt when no such matching exists.
std::optional<Matching> solve_matching(const std::vector<Eigen::Vector3d>& left,
                                       const std::vector<Eigen::Vector3d>& right,
                                       double min_value);
std::optional<Matching> solve_matching(const std::vector<Eigen::Vector3d>& points,
                                       double min_value);

/// Matching maximizing the objective, by binary search over the finite set
/// of attainable pair values.
Matching best_matching(const std::vector<Eigen::Vector3d>& left,
                       const std::vector<Eigen::Vector3d>& right);
Matching best_matching(const std::vector<Eigen::Vector3d>& points);

/// Minimum pair value of an arbitrary antipode-respecting matching.
double matching_objective(const Matching& matching);

/// One plane per antipodal orbit of the left code.
Packingd matching_to_packing(const Matching& matching);

}  // namespace grasspack
