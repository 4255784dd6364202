#pragma once

#include <optional>

#include "grasspack/core.hpp"

namespace grasspack {

/// Ratio above which a packing is considered to meet its bound.
inline constexpr double kMeetsThreshold = 1.0 - 1e-7;

/// Dimension of the traceless symmetric matrices, (m - 1)(m + 2) / 2.
inline Index embedding_dimension_theory(Index m) { return (m - 1) * (m + 2) / 2; }

/// min{ n, n(m-n)/m * N/(N-1) }.
double simplex_bound(Index m, Index n, Index count);

/// n(m-n)/m, valid once N exceeds D + 1.
double orthoplex_bound(Index m, Index n);

struct BoundReport {
  Index m = 0;
  Index n = 0;
  Index count = 0;
  Index embedding_dim = 0;
  double simplex_bound = 0;
  std::optional<double> orthoplex_bound;  // present only when N > D + 1
  double bound = 0;                       // the applicable one
  double achieved = 0;                    // min chordal distance squared
  double ratio = 0;
  bool meets = false;
};

BoundReport audit(const Packingd& packing);

}  // namespace grasspack
