#pragma once

// Subspaces of R^m held as orthonormal generator matrices, the principal
// angles between them, the chordal / geodesic / max-angle distances, and the
// projection-matrix embedding.
//
// Everything here is templated on the scalar type in the Eigen manner;
// `Planed` / `Packingd` are the double-precision instantiations used by the
// rest of the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grasspack/errors.hpp"

namespace grasspack {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Metric { chordal, geodesic, max_angle };

inline std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::chordal:
      return "chordal";
    case Metric::geodesic:
      return "geodesic";
    case Metric::max_angle:
      return "maxangle";
  }
  return "chordal";
}

inline Metric metric_from_string(std::string_view name) {
  if (name == "chordal") return Metric::chordal;
  if (name == "geodesic") return Metric::geodesic;
  if (name == "maxangle" || name == "max_angle") return Metric::max_angle;
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

/// Orthonormality tolerance on gen * gen^T - I (max absolute entry).
inline constexpr double kOrthonormalTol = 1e-10;
/// Relative singular-value cutoff below which a generator is rank deficient.
inline constexpr double kRankTol = 1e-10;

namespace detail {

// Classical Gram-Schmidt with one re-orthogonalization pass, in place on the
// rows. The diagonal of the implied R factor is positive, so the result is the
// Q of a QR factorization under the positive-diagonal sign convention.
// Returns false if some row collapses (relative to its original norm).
template <typename Derived>
bool gram_schmidt_rows(Eigen::MatrixBase<Derived>& rows,
                       typename Derived::Scalar collapse_tol) {
  using Scalar = typename Derived::Scalar;
  for (Index i = 0; i < rows.rows(); ++i) {
    const Scalar original = rows.row(i).norm();
    if (!(original > Scalar(0))) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < i; ++j) {
        rows.row(i) -= rows.row(i).dot(rows.row(j)) * rows.row(j);
      }
    }
    const Scalar norm = rows.row(i).norm();
    if (!(norm > collapse_tol * original)) return false;
    rows.row(i) /= norm;
  }
  return true;
}

template <typename Scalar>
Scalar orthonormality_drift(const MatrixX<Scalar>& gen) {
  const MatrixX<Scalar> gram = gen * gen.transpose();
  return (gram - MatrixX<Scalar>::Identity(gen.rows(), gen.rows()))
      .cwiseAbs()
      .maxCoeff();
}

// Principal angles between the row spaces of two orthonormal n x m matrices,
// ascending. Small angles come from the sines and large ones from the cosines
// so both ends keep full relative accuracy.
template <typename Scalar>
VectorX<Scalar> principal_angles(const MatrixX<Scalar>& a,
                                 const MatrixX<Scalar>& b) {
  using std::acos;
  using std::asin;
  using std::min;
  const Index n = a.rows();
  const MatrixX<Scalar> cross = a * b.transpose();
  const MatrixX<Scalar> residual = b - cross.transpose() * a;
  const VectorX<Scalar> cosines =
      Eigen::JacobiSVD<MatrixX<Scalar>>(cross).singularValues();
  const VectorX<Scalar> sines =
      Eigen::JacobiSVD<MatrixX<Scalar>>(residual).singularValues();
  VectorX<Scalar> angles(n);
  const Scalar half = Scalar(0.5);
  for (Index k = 0; k < n; ++k) {
    const Scalar c = min(cosines(k), Scalar(1));
    const Scalar s = min(sines(n - 1 - k), Scalar(1));
    angles(k) = (c * c >= half) ? asin(s) : acos(c);
  }
  std::sort(angles.data(), angles.data() + n);
  return angles;
}

template <typename Scalar>
Scalar chordal_squared_frobenius(const MatrixX<Scalar>& a,
                                 const MatrixX<Scalar>& b) {
  const Scalar value = Scalar(a.rows()) - (a * b.transpose()).squaredNorm();
  return value > Scalar(0) ? value : Scalar(0);
}

}  // namespace detail

/// An n-dimensional subspace of R^m, stored as an n x m matrix with
/// orthonormal rows. Instances are immutable.
template <typename Scalar_>
class Plane {
 public:
  using Scalar = Scalar_;
  using Matrix = MatrixX<Scalar>;

  /// Orthonormalizes the rows of `raw` (QR with positive-diagonal R).
  /// Throws RankDeficient when the smallest singular value is below
  /// kRankTol times the largest.
  static Plane orthonormalize(const Matrix& raw) {
    if (raw.rows() < 1 || raw.rows() > raw.cols()) {
      throw InvalidArgument("generator must be n x m with 1 <= n <= m");
    }
    const VectorX<Scalar> sv = Eigen::JacobiSVD<Matrix>(raw).singularValues();
    if (!(sv(sv.size() - 1) >= Scalar(kRankTol) * sv(0)) || !(sv(0) > 0)) {
      throw RankDeficient("generator matrix has numerical rank below " +
                          std::to_string(raw.rows()));
    }
    Matrix gen = raw;
    if (!detail::gram_schmidt_rows(gen, Scalar(kRankTol))) {
      throw RankDeficient("generator matrix collapsed during orthonormalization");
    }
    return Plane(std::move(gen));
  }

  /// kOrthonormalTol, loosened for scalars too coarse to reach it.
  static Scalar default_tol() {
    return std::max(Scalar(kOrthonormalTol), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
  }

  /// Adopts `gen` as-is if its rows are orthonormal within `tol`.
  static Plane from_orthonormal(Matrix gen, Scalar tol = default_tol()) {
    if (gen.rows() < 1 || gen.rows() > gen.cols()) {
      throw InvalidArgument("generator must be n x m with 1 <= n <= m");
    }
    if (!(detail::orthonormality_drift(gen) <= tol)) {
      throw NotOrthonormal("generator rows are not orthonormal");
    }
    return Plane(std::move(gen));
  }

  Index ambient_dim() const { return gen_.cols(); }
  Index dim() const { return gen_.rows(); }
  const Matrix& generator() const { return gen_; }

  /// Same plane in another precision, re-orthonormalized there.
  template <typename Other>
  Plane<Other> cast() const {
    return Plane<Other>::orthonormalize(gen_.template cast<Other>());
  }

 private:
  explicit Plane(Matrix gen) : gen_(std::move(gen)) {}
  Matrix gen_;
};

using Planed = Plane<double>;

template <typename Scalar>
Plane<Scalar> orthonormalize(const MatrixX<Scalar>& raw) {
  return Plane<Scalar>::orthonormalize(raw);
}

/// Uniformly distributed plane (orthonormalized Gaussian matrix).
template <typename Scalar = double, typename Rng>
Plane<Scalar> random_plane(Index m, Index n, Rng& rng) {
  if (n < 1 || n > m) throw InvalidArgument("random_plane needs 1 <= n <= m");
  std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
  for (;;) {
    MatrixX<Scalar> raw(n, m);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j) raw(i, j) = gauss(rng);
    try {
      return Plane<Scalar>::orthonormalize(raw);
    } catch (const RankDeficient&) {
    }
  }
}

/// Haar-distributed orthogonal m x m matrix.
template <typename Scalar = double, typename Rng>
MatrixX<Scalar> random_orthogonal(Index m, Rng& rng) {
  return random_plane<Scalar>(m, m, rng).generator();
}

template <typename Scalar>
struct PrincipalAngles {
  VectorX<Scalar> angles;  // ascending, each in [0, pi/2]

  Index size() const { return angles.size(); }
  Scalar smallest() const { return angles(0); }
  Scalar largest() const { return angles(angles.size() - 1); }
};

template <typename Scalar>
void require_same_shape(const Plane<Scalar>& p, const Plane<Scalar>& q) {
  if (p.ambient_dim() != q.ambient_dim() || p.dim() != q.dim()) {
    throw DimensionMismatch("planes live in different Grassmannians");
  }
}

template <typename Scalar>
PrincipalAngles<Scalar> principal_angles(const Plane<Scalar>& p,
                                         const Plane<Scalar>& q) {
  require_same_shape(p, q);
  return {detail::principal_angles(p.generator(), q.generator())};
}

template <typename Scalar>
Scalar chordal_distance_squared(const Plane<Scalar>& p, const Plane<Scalar>& q) {
  const auto theta = principal_angles(p, q).angles;
  Scalar sum = 0;
  for (Index i = 0; i < theta.size(); ++i) {
    const Scalar s = std::sin(theta(i));
    sum += s * s;
  }
  assert(std::abs(sum - detail::chordal_squared_frobenius(p.generator(),
                                                          q.generator())) <=
         Scalar(1e-9) * Scalar(p.dim()));
  return sum;
}

/// sqrt(sum sin^2 theta_i).
template <typename Scalar>
Scalar chordal_distance(const Plane<Scalar>& p, const Plane<Scalar>& q) {
  return std::sqrt(chordal_distance_squared(p, q));
}

/// n - ||A B^T||_F^2; cheaper but loses relative accuracy for nearby planes.
template <typename Scalar>
Scalar chordal_distance_squared_fast(const Plane<Scalar>& p,
                                     const Plane<Scalar>& q) {
  require_same_shape(p, q);
  return detail::chordal_squared_frobenius(p.generator(), q.generator());
}

/// sqrt(sum theta_i^2).
template <typename Scalar>
Scalar geodesic_distance(const Plane<Scalar>& p, const Plane<Scalar>& q) {
  return principal_angles(p, q).angles.norm();
}

/// Largest principal angle.
template <typename Scalar>
Scalar max_angle_distance(const Plane<Scalar>& p, const Plane<Scalar>& q) {
  return principal_angles(p, q).largest();
}

template <typename Scalar>
Scalar distance(const Plane<Scalar>& p, const Plane<Scalar>& q, Metric metric) {
  switch (metric) {
    case Metric::chordal:
      return chordal_distance(p, q);
    case Metric::geodesic:
      return geodesic_distance(p, q);
    case Metric::max_angle:
      return max_angle_distance(p, q);
  }
  return chordal_distance(p, q);
}

/// Orthogonal projection onto a plane: symmetric, idempotent, trace n.
template <typename Scalar>
struct ProjectionMatrix {
  MatrixX<Scalar> mat;

  Index ambient_dim() const { return mat.rows(); }
  Scalar trace() const { return mat.trace(); }
  /// P - (n/m) I, the traceless part.
  MatrixX<Scalar> detraced() const {
    return mat - (trace() / Scalar(mat.rows())) *
                     MatrixX<Scalar>::Identity(mat.rows(), mat.rows());
  }
};

template <typename Scalar>
ProjectionMatrix<Scalar> projection_matrix(const Plane<Scalar>& p) {
  return {p.generator().transpose() * p.generator()};
}

/// ||P - Q||_F / sqrt(2).
template <typename Scalar>
Scalar chordal_from_projection(const ProjectionMatrix<Scalar>& p,
                               const ProjectionMatrix<Scalar>& q) {
  if (p.mat.rows() != q.mat.rows() || p.mat.cols() != q.mat.cols()) {
    throw DimensionMismatch("projection matrices differ in size");
  }
  if (std::abs(p.trace() - q.trace()) > Scalar(1e-8)) {
    throw DimensionMismatch("projection matrices differ in rank");
  }
  return (p.mat - q.mat).norm() / std::sqrt(Scalar(2));
}

/// The orthogonal complement, an (m - n)-plane.
template <typename Scalar>
Plane<Scalar> complement(const Plane<Scalar>& p) {
  const Index m = p.ambient_dim();
  const Index n = p.dim();
  if (n >= m) throw InvalidArgument("complement needs n < m");
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(p.generator().transpose());
  const MatrixX<Scalar> q = qr.householderQ() * MatrixX<Scalar>::Identity(m, m);
  const MatrixX<Scalar> rows = q.rightCols(m - n).transpose();
  return Plane<Scalar>::orthonormalize(rows);
}

/// An ordered list of planes sharing (m, n), tagged with the metric it was
/// built or optimized for.
template <typename Scalar>
class Packing {
 public:
  Packing(Index m, Index n, Metric metric = Metric::chordal)
      : m_(m), n_(n), metric_(metric) {
    if (n < 1 || n > m) throw InvalidArgument("packing needs 1 <= n <= m");
  }

  Packing(std::vector<Plane<Scalar>> planes, Metric metric = Metric::chordal)
      : metric_(metric) {
    if (planes.empty()) throw InvalidArgument("packing needs at least one plane");
    m_ = planes.front().ambient_dim();
    n_ = planes.front().dim();
    for (auto& p : planes) push_back(std::move(p));
  }

  void push_back(Plane<Scalar> p) {
    if (p.ambient_dim() != m_ || p.dim() != n_) {
      throw DimensionMismatch("plane does not match packing dimensions");
    }
    planes_.push_back(std::move(p));
  }

  Index ambient_dim() const { return m_; }
  Index dim() const { return n_; }
  Index size() const { return static_cast<Index>(planes_.size()); }
  Metric metric() const { return metric_; }
  void set_metric(Metric metric) { metric_ = metric; }

  const Plane<Scalar>& operator[](Index i) const {
    return planes_[static_cast<std::size_t>(i)];
  }
  const std::vector<Plane<Scalar>>& planes() const { return planes_; }
  auto begin() const { return planes_.begin(); }
  auto end() const { return planes_.end(); }

 private:
  Index m_ = 0;
  Index n_ = 0;
  Metric metric_ = Metric::chordal;
  std::vector<Plane<Scalar>> planes_;
};

using Packingd = Packing<double>;

template <typename Scalar>
struct MinDistance {
  Scalar value;
  Index first;
  Index second;
};

/// Minimum pairwise distance; ties go to the lexicographically first pair.
template <typename Scalar>
MinDistance<Scalar> min_distance(const Packing<Scalar>& packing, Metric metric) {
  if (packing.size() < 2) {
    throw InvalidArgument("min_distance needs at least two planes");
  }
  MinDistance<Scalar> best{std::numeric_limits<Scalar>::infinity(), 0, 1};
  for (Index i = 0; i < packing.size(); ++i) {
    for (Index j = i + 1; j < packing.size(); ++j) {
      const Scalar d = distance(packing[i], packing[j], metric);
      if (d < best.value) best = {d, i, j};
    }
  }
  return best;
}

template <typename Scalar>
MinDistance<Scalar> min_distance(const Packing<Scalar>& packing) {
  return min_distance(packing, packing.metric());
}

/// Symmetric matrix of pairwise distances.
template <typename Scalar>
MatrixX<Scalar> distance_matrix(const Packing<Scalar>& packing, Metric metric) {
  const Index count = packing.size();
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(count, count);
  for (Index i = 0; i < count; ++i) {
    for (Index j = i + 1; j < count; ++j) {
      d(i, j) = d(j, i) = distance(packing[i], packing[j], metric);
    }
  }
  return d;
}

/// Angle in degrees whose sine is the given chordal distance of two lines.
inline double line_angle_degrees(double chordal) {
  return std::asin(std::min(chordal, 1.0)) * 180.0 / M_PI;
}

}  // namespace grasspack
