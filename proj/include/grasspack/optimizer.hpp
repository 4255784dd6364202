#pragma once

// Potential-function packing search.
//
// A configuration S of N planes is scored by
//
//     Phi(S) = sum_{i<j} 1 / (d(P_i, P_j) - offset)
//
// and improved with Hooke-Jeeves pattern search over the raw generator
// entries (each trial plane is re-orthonormalized before scoring). After each
// epoch of `steps_per_epoch` pattern-search iterations the offset moves
// halfway towards the current minimum distance, which progressively turns the
// potential into a max-min objective.
//
// Each epoch runs in a freshly rotated coordinate frame (undone on output). A
// restart stops once the minimum distance has not moved for `patience`
// consecutive epochs, or after `max_epochs`.

#include <cstdint>
#include <optional>
#include <vector>

#include "grasspack/core.hpp"

namespace grasspack {

struct OptimConfig {
  Metric metric = Metric::chordal;  // chordal or geodesic
  int restarts = 50;
  int steps_per_epoch = 100;
  double initial_step = 0.1;
  double step_shrink = 0.5;
  double min_step = 1e-12;
  /// A restart stops once an epoch improves the minimum distance by less.
  double min_improvement = 1e-12;
  int max_epochs = 400;
  int patience = 3;  // consecutive stalled epochs before a restart stops
  std::uint64_t seed = 1;
  /// Used as the starting point of restart 0; later restarts are random.
  std::optional<Packingd> initial_packing;
  /// Worker threads for restarts; 0 means hardware concurrency.
  unsigned threads = 1;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double offset = 0;
  double min_dist = 0;          // at the end of the epoch
  double potential_before = 0;  // both evaluated at this epoch's offset
  double potential_after = 0;
};

struct OptimResult {
  Packingd packing;
  double min_dist = 0;
  std::vector<EpochRecord> potential_trace;  // of the winning restart
  int restart_index = 0;
};

/// sum_{i<j} 1/(d_ij - offset). Throws PoleCrossed if some d_ij <= offset.
double potential(const Packingd& packing, double offset, Metric metric);

/// d Phi / d gen_i for every plane, as n x m matrices. Chordal gradients are
/// analytic; geodesic ones use central differences (h = 1e-6). Both are
/// gradients of the basis-independent potential, so they are orthogonal to
/// the row space of each generator.
std::vector<MatrixX<double>> potential_gradient(const Packingd& packing,
                                                double offset, Metric metric);

/// One epoch of Hooke-Jeeves iterations at a fixed offset starting from
/// `config.initial_step`. The returned packing never has a larger potential.
Packingd pattern_search_epoch(const Packingd& packing, double offset,
                              const OptimConfig& config);

/// Multi-start search for N planes in G(m, n). Deterministic for a fixed
/// config regardless of the thread count.
OptimResult optimize(Index m, Index n, Index count, const OptimConfig& config);

}  // namespace grasspack
