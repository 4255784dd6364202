#include "grasspack/binocular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace grasspack {

namespace {

using Eigen::Quaterniond;
using Eigen::Vector3d;
using Eigen::Vector4d;

Quaterniond from_r4(const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  return Quaterniond(x(0), x(1), x(2), x(3));
}

Quaterniond pure(const Vector3d& v) { return Quaterniond(0.0, v.x(), v.y(), v.z()); }

Vector4d to_r4(const Quaterniond& q) { return Vector4d(q.w(), q.x(), q.y(), q.z()); }

Vector3d any_orthogonal_unit(const Vector3d& v) {
  Index axis = 0;
  v.cwiseAbs().minCoeff(&axis);
  return v.cross(Vector3d::Unit(axis)).normalized();
}

struct Orbits {
  std::vector<Index> rep;
  std::vector<Index> neg;
};

Orbits pair_antipodes(const std::vector<Vector3d>& points) {
  if (points.empty() || points.size() % 2 != 0) {
    throw NotAntipodal("point set must contain an even, nonzero number of points");
  }
  for (const auto& p : points) {
    if (std::abs(p.norm() - 1.0) > 1e-9) throw InvalidArgument("points must be unit vectors");
  }
  Orbits orbits;
  std::vector<bool> used(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t partner = points.size();
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!used[j] && (points[i] + points[j]).norm() < 1e-9) {
        partner = j;
        break;
      }
    }
    if (partner == points.size()) {
      throw NotAntipodal("point " + std::to_string(i) + " has no antipode");
    }
    used[partner] = true;
    orbits.rep.push_back(Index(i));
    orbits.neg.push_back(Index(partner));
  }
  return orbits;
}

// Exact search for an antipode-respecting bijection between orbits. A value
// for left orbit a is 2 t + (sign < 0): send rep(a) to +/- rep(t).
class MatchingSearch {
 public:
  MatchingSearch(const std::vector<Vector3d>& left, const std::vector<Vector3d>& right)
      : left_(left), right_(right), lo_(pair_antipodes(left)), ro_(pair_antipodes(right)) {
    if (lo_.rep.size() != ro_.rep.size()) {
      throw InvalidArgument("left and right codes differ in size");
    }
    count_ = lo_.rep.size();
    const Index n = Index(count_);
    cl_.resize(n, n);
    cr_.resize(n, n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        cl_(a, b) = left_[std::size_t(lo_.rep[std::size_t(a)])].dot(
            left_[std::size_t(lo_.rep[std::size_t(b)])]);
        cr_(a, b) = right_[std::size_t(ro_.rep[std::size_t(a)])].dot(
            right_[std::size_t(ro_.rep[std::size_t(b)])]);
      }
    }
  }

  std::size_t orbit_count() const { return count_; }

  // Product entering the value of orbit pair (a, b) sent to targets (t, u).
  double product(std::size_t a, std::size_t b, std::size_t t, std::size_t u) const {
    return cl_(Index(a), Index(b)) * cr_(Index(t), Index(u));
  }

  std::vector<double> candidate_values() const {
    std::vector<double> values;
    for (std::size_t a = 0; a < count_; ++a)
      for (std::size_t b = a + 1; b < count_; ++b)
        for (std::size_t t = 0; t < count_; ++t)
          for (std::size_t u = t + 1; u < count_; ++u) {
            const double p = product(a, b, t, u);
            values.push_back(1.0 - p);
            values.push_back(1.0 + p);
          }
    std::sort(values.begin(), values.end());
    // Merge values equal up to rounding; keep the smallest of each cluster.
    std::vector<double> merged;
    for (const double v : values) {
      if (merged.empty() || v - merged.back() > kMatchingTol) merged.push_back(v);
    }
    return merged;
  }

  std::optional<Matching> solve(double threshold) {
    threshold_ = threshold;
    assignment_.assign(count_, -1);
    std::vector<std::vector<char>> domains(count_, std::vector<char>(2 * count_, 1));
    // Flipping every sign leaves all values unchanged.
    if (count_ > 0) {
      for (std::size_t v = 1; v < 2 * count_; v += 2) domains[0][v] = 0;
    }
    if (!search(domains, 0)) return std::nullopt;
    return build();
  }

 private:
  bool compatible(std::size_t a, std::size_t va, std::size_t b, std::size_t vb) const {
    const std::size_t t = va / 2;
    const std::size_t u = vb / 2;
    if (t == u) return false;
    const double sign = ((va & 1) == (vb & 1)) ? 1.0 : -1.0;
    return 1.0 - sign * product(a, b, t, u) >= threshold_ - kMatchingTol;
  }

  bool search(std::vector<std::vector<char>>& domains, std::size_t depth) {
    if (depth == count_) return true;
    // Most constrained unassigned orbit first.
    std::size_t chosen = count_;
    std::size_t smallest = std::numeric_limits<std::size_t>::max();
    for (std::size_t a = 0; a < count_; ++a) {
      if (assignment_[a] >= 0) continue;
      const auto size = std::size_t(std::count(domains[a].begin(), domains[a].end(), 1));
      if (size < smallest) {
        smallest = size;
        chosen = a;
      }
    }
    for (std::size_t v = 0; v < 2 * count_; ++v) {
      if (!domains[chosen][v]) continue;
      auto next = domains;
      bool wiped = false;
      for (std::size_t b = 0; b < count_ && !wiped; ++b) {
        if (b == chosen || assignment_[b] >= 0) continue;
        bool alive = false;
        for (std::size_t w = 0; w < 2 * count_; ++w) {
          if (!next[b][w]) continue;
          if (!compatible(chosen, v, b, w)) {
            next[b][w] = 0;
          } else {
            alive = true;
          }
        }
        wiped = !alive;
      }
      if (wiped) continue;
      assignment_[chosen] = long(v);
      if (search(next, depth + 1)) return true;
      assignment_[chosen] = -1;
    }
    return false;
  }

  Matching build() const {
    Matching result;
    result.left = left_;
    result.right = right_;
    result.perm.assign(left_.size(), -1);
    for (std::size_t a = 0; a < count_; ++a) {
      const auto v = std::size_t(assignment_[a]);
      const std::size_t t = v / 2;
      const bool negative = (v & 1) != 0;
      const Index to_rep = ro_.rep[t];
      const Index to_neg = ro_.neg[t];
      result.perm[std::size_t(lo_.rep[a])] = negative ? to_neg : to_rep;
      result.perm[std::size_t(lo_.neg[a])] = negative ? to_rep : to_neg;
    }
    result.objective = matching_objective(result);
    return result;
  }

  const std::vector<Vector3d>& left_;
  const std::vector<Vector3d>& right_;
  Orbits lo_;
  Orbits ro_;
  std::size_t count_ = 0;
  Eigen::MatrixXd cl_;
  Eigen::MatrixXd cr_;
  double threshold_ = 0;
  std::vector<long> assignment_;
};

}  // namespace

BinocularPair canonical(const BinocularPair& pair) {
  for (Index k = 0; k < 3; ++k) {
    if (std::abs(pair.left(k)) > 1e-12) {
      if (pair.left(k) < 0) return {-pair.left, -pair.right};
      return pair;
    }
  }
  return pair;
}

BinocularPair plane_to_lr(const Planed& plane) {
  if (plane.ambient_dim() != 4 || plane.dim() != 2) {
    throw DimensionMismatch("binocular representation needs a plane in G(4,2)");
  }
  const Quaterniond u = from_r4(plane.generator().row(0));
  const Quaterniond v = from_r4(plane.generator().row(1));
  // For orthonormal u, v: u conj(v) is a pure unit quaternion and
  // v conj(u) = -u conj(v), so l = u conj(v) and likewise r = conj(v) u.
  const Quaterniond l = u * v.conjugate();
  const Quaterniond r = v.conjugate() * u;
  return canonical({l.vec().normalized(), r.vec().normalized()});
}

Planed lr_to_plane(const BinocularPair& pair) {
  const Vector3d l = pair.left.normalized();
  const Vector3d r = pair.right.normalized();
  Eigen::Matrix<double, 2, 4> gen;
  if ((l + r).norm() < 1e-12) {
    // l = -r: the plane is the pure-imaginary complement of l.
    const Vector3d u = any_orthogonal_unit(l);
    const Vector3d v = l.cross(u);
    gen.row(0) = to_r4(pure(u)).transpose();
    gen.row(1) = to_r4(pure(v)).transpose();
  } else {
    const Quaterniond lr = pure(l) * pure(r);
    const Quaterniond u(1.0 - lr.w(), -lr.x(), -lr.y(), -lr.z());
    const Quaterniond v(0.0, l.x() + r.x(), l.y() + r.y(), l.z() + r.z());
    gen.row(0) = to_r4(u).transpose();
    gen.row(1) = to_r4(v).transpose();
  }
  return Planed::orthonormalize(gen);
}

LrDistances lr_distances(const BinocularPair& a, const BinocularPair& b) {
  const auto angle = [](const Vector3d& x, const Vector3d& y) {
    return std::atan2(x.cross(y).norm(), x.dot(y));
  };
  double phi = angle(a.left, b.left);
  double psi = angle(a.right, b.right);
  if (phi + psi > M_PI) {
    phi = M_PI - phi;
    psi = M_PI - psi;
  }
  LrDistances out;
  out.theta1 = std::abs(psi - phi) / 2;
  out.theta2 = (psi + phi) / 2;
  out.geodesic_sq = (psi * psi + phi * phi) / 2;
  // cos(psi) cos(phi) is unchanged by taking both supplements.
  out.chordal_sq = 1.0 - a.left.normalized().dot(b.left.normalized()) *
                             a.right.normalized().dot(b.right.normalized());
  return out;
}

double matching_objective(const Matching& matching) {
  const Orbits orbits = pair_antipodes(matching.left);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < orbits.rep.size(); ++a) {
    for (std::size_t b = a + 1; b < orbits.rep.size(); ++b) {
      const auto ia = std::size_t(orbits.rep[a]);
      const auto ib = std::size_t(orbits.rep[b]);
      const double value =
          1.0 - matching.left[ia].dot(matching.left[ib]) *
                    matching.right[std::size_t(matching.perm[ia])].dot(
                        matching.right[std::size_t(matching.perm[ib])]);
      best = std::min(best, value);
    }
  }
  return best;
}

std::optional<Matching> solve_matching(const std::vector<Vector3d>& left,
                                       const std::vector<Vector3d>& right,
                                       double min_value) {
  MatchingSearch search(left, right);
  return search.solve(min_value);
}

std::optional<Matching> solve_matching(const std::vector<Vector3d>& points,
                                       double min_value) {
  return solve_matching(points, points, min_value);
}

Matching best_matching(const std::vector<Vector3d>& left,
                       const std::vector<Vector3d>& right) {
  MatchingSearch search(left, right);
  const std::vector<double> candidates = search.candidate_values();
  if (candidates.empty()) return *search.solve(-std::numeric_limits<double>::infinity());
  // candidates.front() is always attainable; find the largest feasible one.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  std::optional<Matching> best = search.solve(candidates[lo]);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (auto found = search.solve(candidates[mid])) {
      lo = mid;
      best = std::move(found);
    } else {
      hi = mid - 1;
    }
  }
  return *best;
}

Matching best_matching(const std::vector<Vector3d>& points) {
  return best_matching(points, points);
}

Packingd matching_to_packing(const Matching& matching) {
  const Orbits orbits = pair_antipodes(matching.left);
  std::vector<Planed> planes;
  for (const Index rep : orbits.rep) {
    const auto i = std::size_t(rep);
    planes.push_back(lr_to_plane(
        {matching.left[i], matching.right[std::size_t(matching.perm[i])]}));
  }
  return Packingd(std::move(planes), Metric::chordal);
}

}  // namespace grasspack
