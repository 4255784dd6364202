#include "grasspack/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grasspack/bounds.hpp"

namespace grasspack {

using Eigen::MatrixXd;
using Eigen::VectorXd;

EmbeddingReport embedding_dimension(const Packingd& packing, Metric metric, double tol) {
  const Index count = packing.size();
  if (count < 2) throw InvalidArgument("embedding needs at least two planes");
  const Index m = packing.ambient_dim();
  const Index n = packing.dim();

  MatrixXd sq = distance_matrix(packing, metric).array().square().matrix();
  const MatrixXd centring =
      MatrixXd::Identity(count, count) - MatrixXd::Constant(count, count, 1.0 / double(count));
  const MatrixXd gram = -0.5 * centring * sq * centring;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram);
  VectorXd values = eig.eigenvalues().reverse();

  EmbeddingReport report;
  report.theory_dim = embedding_dimension_theory(m);
  report.sphere_radius = std::sqrt(double(n * (m - n)) / double(2 * m));
  report.tol = tol;
  const double scale = std::max(values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  report.found_dim = (values.array() > tol * scale).count();
  report.negative_eigenvalue = (values.array() < -tol * scale).any();
  report.gram_eigenvalues = values;

  const MatrixXd pts = embed_points(packing);
  const Eigen::RowVectorXd centroid = pts.colwise().mean();
  const VectorXd radii = (pts.rowwise() - centroid).rowwise().norm();
  report.centroid_radius_min = radii.minCoeff();
  report.centroid_radius_max = radii.maxCoeff();
  return report;
}

MatrixXd embed_points(const Packingd& packing) {
  const Index m = packing.ambient_dim();
  const Index dim = embedding_dimension_theory(m);
  MatrixXd pts(packing.size(), dim);
  for (Index k = 0; k < packing.size(); ++k) {
    const MatrixXd bar = projection_matrix(packing[k]).detraced();
    Index col = 0;
    // Off-diagonal basis (E_ij + E_ji)/sqrt(2).
    for (Index i = 0; i < m; ++i)
      for (Index j = i + 1; j < m; ++j) pts(k, col++) = std::sqrt(2.0) * bar(i, j);
    // Diagonal: Helmert basis of traceless diagonal matrices.
    for (Index j = 1; j < m; ++j) {
      double s = bar.diagonal().head(j).sum() - double(j) * bar(j, j);
      pts(k, col++) = s / std::sqrt(double(j * (j + 1)));
    }
  }
  return pts / std::sqrt(2.0);
}

Tour evaluate_tour(const MatrixXd& distances, std::vector<Index> order) {
  Tour t;
  t.order = std::move(order);
  t.min_edge = std::numeric_limits<double>::infinity();
  t.max_edge = 0;
  const std::size_t count = t.order.size();
  for (std::size_t k = 0; k < count; ++k) {
    const double e = distances(t.order[k], t.order[(k + 1) % count]);
    t.total_length += e;
    t.min_edge = std::min(t.min_edge, e);
    t.max_edge = std::max(t.max_edge, e);
  }
  return t;
}

Tour tour(const Packingd& packing) {
  const Index count = packing.size();
  if (count < 3) throw InvalidArgument("a tour needs at least three planes");
  const MatrixXd d = distance_matrix(packing, Metric::chordal);

  std::vector<Index> order{0};
  std::vector<bool> used(std::size_t(count), false);
  used[0] = true;
  while (Index(order.size()) < count) {
    const Index last = order.back();
    Index next = -1;
    for (Index j = 0; j < count; ++j) {
      if (!used[std::size_t(j)] && (next < 0 || d(last, j) < d(last, next))) next = j;
    }
    used[std::size_t(next)] = true;
    order.push_back(next);
  }

  // 2-opt: reverse order[i+1..j] when it shortens the cycle.
  const std::size_t size = order.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < size; ++i) {
      for (std::size_t j = i + 2; j < size; ++j) {
        const Index a = order[i], b = order[i + 1];
        const Index c = order[j], e = order[(j + 1) % size];
        if (a == e) continue;
        const double delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
        if (delta < -1e-12) {
          std::reverse(order.begin() + std::ptrdiff_t(i) + 1, order.begin() + std::ptrdiff_t(j) + 1);
          improved = true;
        }
      }
    }
  }
  return evaluate_tour(d, std::move(order));
}

}  // namespace grasspack
