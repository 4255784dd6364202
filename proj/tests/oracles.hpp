#pragma once

// Reference computations used only by the tests. They avoid the library's
// own code paths: angles come from an eigen-decomposition instead of an SVD,
// distances from projection matrices written out by hand.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "grasspack/core.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Orthonormal rows via Householder QR of the transpose.
inline MatrixXd orthonormal_rows(const MatrixXd& raw) {
  Eigen::HouseholderQR<MatrixXd> qr(raw.transpose());
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(raw.cols(), raw.rows());
  return q.transpose();
}

inline MatrixXd random_generator(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXd raw(n, m);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = g(rng);
  return orthonormal_rows(raw);
}

inline MatrixXd projection(const MatrixXd& gen) {
  return gen.transpose() * gen;
}

// cos^2 of the principal angles are the eigenvalues of A B^T B A^T.
inline VectorXd angles(const MatrixXd& a, const MatrixXd& b) {
  const MatrixXd c = a * b.transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(c * c.transpose());
  VectorXd cos2 = eig.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
  VectorXd theta(cos2.size());
  for (Eigen::Index k = 0; k < cos2.size(); ++k) theta(k) = std::acos(std::sqrt(cos2(k)));
  std::sort(theta.data(), theta.data() + theta.size());
  return theta;
}

inline double chordal_sq_projection(const MatrixXd& a, const MatrixXd& b) {
  return 0.5 * (projection(a) - projection(b)).squaredNorm();
}

inline double chordal_sq(const grasspack::Planed& p, const grasspack::Planed& q) {
  return chordal_sq_projection(p.generator(), q.generator());
}

inline double min_chordal_sq(const grasspack::Packingd& packing) {
  double best = 1e300;
  for (Eigen::Index i = 0; i < packing.size(); ++i)
    for (Eigen::Index j = i + 1; j < packing.size(); ++j)
      best = std::min(best, chordal_sq(packing[i], packing[j]));
  return best;
}

inline grasspack::Packingd random_packing(Eigen::Index m, Eigen::Index n, Eigen::Index count,
                                          std::mt19937_64& rng) {
  std::vector<grasspack::Planed> planes;
  for (Eigen::Index k = 0; k < count; ++k) {
    planes.push_back(grasspack::Planed::from_orthonormal(random_generator(m, n, rng)));
  }
  return grasspack::Packingd(std::move(planes));
}

inline std::vector<Eigen::Vector3d> octahedron() {
  return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

inline std::vector<Eigen::Vector3d> cube() {
  std::vector<Eigen::Vector3d> pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) pts.push_back(Eigen::Vector3d(x, y, z).normalized());
  return pts;
}

inline std::vector<Eigen::Vector3d> icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> pts;
  for (double a : {-1.0, 1.0})
    for (double b : {-t, t}) {
      pts.push_back(Eigen::Vector3d(0, a, b).normalized());
      pts.push_back(Eigen::Vector3d(a, b, 0).normalized());
      pts.push_back(Eigen::Vector3d(b, 0, a).normalized());
    }
  return pts;
}

inline std::vector<Eigen::Vector3d> random_antipodal(int orbits, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Eigen::Vector3d> pts;
  for (int k = 0; k < orbits; ++k) {
    const Eigen::Vector3d p = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
    pts.push_back(p);
    pts.push_back(-p);
  }
  return pts;
}

// Best min over orbit pairs of 1 - (p_a.p_b)(f(p_a).f(p_b)) over all
// bijections of orbit representatives and all sign choices.
inline double brute_force_matching(const std::vector<Eigen::Vector3d>& left,
                                   const std::vector<Eigen::Vector3d>& right) {
  const auto reps = [](const std::vector<Eigen::Vector3d>& pts) {
    std::vector<Eigen::Vector3d> out;
    for (const auto& p : pts) {
      bool seen = false;
      for (const auto& q : out) seen = seen || (p + q).norm() < 1e-9 || (p - q).norm() < 1e-9;
      if (!seen) out.push_back(p);
    }
    return out;
  };
  const auto l = reps(left);
  const auto r = reps(right);
  const int count = int(l.size());
  if (count < 2) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) perm[std::size_t(k)] = k;
  double best = -1e300;
  do {
    for (int mask = 0; mask < (1 << count); ++mask) {
      double worst = 1e300;
      for (int a = 0; a < count; ++a) {
        const Eigen::Vector3d fa = ((mask >> a) & 1 ? -1.0 : 1.0) * r[std::size_t(perm[std::size_t(a)])];
        for (int b = a + 1; b < count; ++b) {
          const Eigen::Vector3d fb = ((mask >> b) & 1 ? -1.0 : 1.0) * r[std::size_t(perm[std::size_t(b)])];
          worst = std::min(worst, 1.0 - l[std::size_t(a)].dot(l[std::size_t(b)]) * fa.dot(fb));
        }
      }
      best = std::max(best, worst);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
