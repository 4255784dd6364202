#include "grasspack/bounds.hpp"

#include <algorithm>
#include <string>

namespace grasspack {

namespace {

void check_dims(Index m, Index n) {
  if (n < 1 || n > m - 1) {
    throw InvalidArgument("bounds need 1 <= n <= m - 1 (got m=" + std::to_string(m) +
                          ", n=" + std::to_string(n) + ")");
  }
}

}  // namespace

double simplex_bound(Index m, Index n, Index count) {
  check_dims(m, n);
  if (count < 2) throw InvalidArgument("simplex bound needs N >= 2");
  const double radius_sq = double(n) * double(m - n) / double(m);
  return std::min(double(n), radius_sq * double(count) / double(count - 1));
}

double orthoplex_bound(Index m, Index n) {
  check_dims(m, n);
  return double(n) * double(m - n) / double(m);
}

BoundReport audit(const Packingd& packing) {
  BoundReport r;
  r.m = packing.ambient_dim();
  r.n = packing.dim();
  r.count = packing.size();
  r.embedding_dim = embedding_dimension_theory(r.m);
  r.simplex_bound = simplex_bound(r.m, r.n, r.count);
  r.bound = r.simplex_bound;
  if (r.count > r.embedding_dim + 1) {
    r.orthoplex_bound = orthoplex_bound(r.m, r.n);
    r.bound = std::min(r.simplex_bound, *r.orthoplex_bound);
  }
  const double d = min_distance(packing, Metric::chordal).value;
  r.achieved = d * d;
  r.ratio = r.achieved / r.bound;
  // Orthoplex equality needs N <= 2D.
  r.meets = r.ratio > kMeetsThreshold && r.count <= 2 * r.embedding_dim;
  return r;
}

}  // namespace grasspack
