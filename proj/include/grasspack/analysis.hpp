#pragma once

// Euclidean embedding of a packing and short Hamiltonian cycles through it.

#include <Eigen/Dense>

#include <vector>

#include "grasspack/core.hpp"

namespace grasspack {

struct EmbeddingReport {
  Index found_dim = 0;   // numerical rank of the centred Gram matrix
  Index theory_dim = 0;  // (m-1)(m+2)/2
  double sphere_radius = 0;  // sqrt(n(m-n)/(2m)), radius of embed_points
  // Distances from the centroid of embed_points, reported, not asserted.
  double centroid_radius_min = 0;
  double centroid_radius_max = 0;
  Eigen::VectorXd gram_eigenvalues;  // descending
  double tol = 0;
  /// Some eigenvalue is below -tol * max: the distances are not Euclidean.
  bool negative_eigenvalue = false;
};

/// Classical double centring of the squared distances under `metric`.
EmbeddingReport embedding_dimension(const Packingd& packing,
                                    Metric metric = Metric::chordal,
                                    double tol = 1e-8);

/// N x (m-1)(m+2)/2 matrix of de-traced projection matrices in an
/// orthonormal basis of traceless symmetric matrices, scaled by 1/sqrt(2),
/// so Euclidean distances are chordal distances.
Eigen::MatrixXd embed_points(const Packingd& packing);

struct Tour {
  std::vector<Index> order;
  double total_length = 0;  // sum of d_c around the closed cycle
  double min_edge = 0;
  double max_edge = 0;
};

/// Nearest neighbour from plane 0, then 2-opt to local optimality.
Tour tour(const Packingd& packing);

/// Length and edge extremes of a given closed cycle under d_c.
Tour evaluate_tour(const Eigen::MatrixXd& distances, std::vector<Index> order);

}  // namespace grasspack
