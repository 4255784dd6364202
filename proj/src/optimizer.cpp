#include "grasspack/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <utility>

namespace grasspack {

namespace {

using Matrix = MatrixX<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

double pair_distance(const Matrix& a, const Matrix& b, Metric metric) {
  switch (metric) {
    case Metric::chordal:
      return std::sqrt(detail::chordal_squared_frobenius(a, b));
    case Metric::geodesic:
      return detail::principal_angles(a, b).norm();
    case Metric::max_angle: {
      const auto theta = detail::principal_angles(a, b);
      return theta(theta.size() - 1);
    }
  }
  return 0;
}

double potential_of(const std::vector<Matrix>& gens, double offset, Metric metric) {
  double phi = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const double d = pair_distance(gens[i], gens[j], metric);
      if (!(d > offset)) return kInf;
      phi += 1.0 / (d - offset);
    }
  }
  return phi;
}

std::vector<Matrix> generators_of(const Packingd& packing) {
  std::vector<Matrix> gens;
  gens.reserve(static_cast<std::size_t>(packing.size()));
  for (const auto& p : packing) gens.push_back(p.generator());
  return gens;
}

Packingd packing_from(const std::vector<Matrix>& gens, Metric metric) {
  std::vector<Planed> planes;
  planes.reserve(gens.size());
  for (const auto& g : gens) planes.push_back(Planed::orthonormalize(g));
  return Packingd(std::move(planes), metric);
}

// A point of the search: raw coordinates plus the derived orthonormal planes,
// the pairwise distance table and the potential.
struct Point {
  std::vector<Matrix> raw;
  std::vector<Matrix> orth;
  Matrix dist;
  double phi = kInf;
};

class PatternSearch {
 public:
  PatternSearch(Metric metric, double offset) : metric_(metric), offset_(offset) {}

  void set_offset(double offset) { offset_ = offset; }
  double offset() const { return offset_; }

  // Recomputes everything derived from `pt.raw`.
  void refresh(Point& pt) const {
    const std::size_t count = pt.raw.size();
    pt.orth = pt.raw;
    pt.dist = Matrix::Zero(Index(count), Index(count));
    for (auto& g : pt.orth) {
      if (!detail::gram_schmidt_rows(g, kRankTol)) {
        pt.phi = kInf;
        return;
      }
    }
    double phi = 0;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const double d = pair_distance(pt.orth[i], pt.orth[j], metric_);
        pt.dist(Index(i), Index(j)) = pt.dist(Index(j), Index(i)) = d;
        if (!(d > offset_)) {
          phi = kInf;
        } else if (phi < kInf) {
          phi += 1.0 / (d - offset_);
        }
      }
    }
    pt.phi = phi;
  }

  // Re-scores an already refreshed point after an offset change.
  void rescore(Point& pt) const {
    double phi = 0;
    const Index count = pt.dist.rows();
    for (Index i = 0; i < count; ++i) {
      for (Index j = i + 1; j < count; ++j) {
        const double d = pt.dist(i, j);
        if (!(d > offset_)) {
          pt.phi = kInf;
          return;
        }
        phi += 1.0 / (d - offset_);
      }
    }
    pt.phi = phi;
  }

  // One Hooke-Jeeves epoch; returns the final base point.
  Point epoch(Point base, const OptimConfig& config) {
    double step = config.initial_step;
    int iterations = 0;
    while (iterations < config.steps_per_epoch && step >= config.min_step) {
      Point trial = base;
      explore(trial, step);
      ++iterations;
      if (!(trial.phi < base.phi)) {
        step *= config.step_shrink;
        continue;
      }
      // Pattern moves: keep extrapolating along the last successful direction.
      while (iterations < config.steps_per_epoch) {
        Point previous = std::move(base);
        base = std::move(trial);
        Point pattern;
        pattern.raw.resize(base.raw.size());
        for (std::size_t i = 0; i < base.raw.size(); ++i) {
          pattern.raw[i] = 2.0 * base.raw[i] - previous.raw[i];
        }
        refresh(pattern);
        if (!(pattern.phi < kInf)) break;
        explore(pattern, step);
        ++iterations;
        if (!(pattern.phi < base.phi)) break;
        trial = std::move(pattern);
      }
    }
    return base;
  }

 private:
  // Coordinate-wise exploratory moves around `pt`, in place.
  void explore(Point& pt, double step) {
    const std::size_t count = pt.raw.size();
    if (count == 0) return;
    const Index rows = pt.raw[0].rows();
    const Index cols = pt.raw[0].cols();
    new_dist_.resize(Index(count));
    for (std::size_t i = 0; i < count; ++i) {
      for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
          for (const double sign : {1.0, -1.0}) {
            trial_raw_ = pt.raw[i];
            trial_raw_(r, c) += sign * step;
            double delta = 0;
            if (try_move(pt, i, delta) && delta < 0) {
              pt.raw[i] = trial_raw_;
              pt.orth[i] = trial_orth_;
              for (std::size_t j = 0; j < count; ++j) {
                if (j == i) continue;
                pt.dist(Index(i), Index(j)) = pt.dist(Index(j), Index(i)) =
                    new_dist_(Index(j));
              }
              break;
            }
          }
        }
      }
    }
    rescore(pt);
  }

  // Scores replacing plane i by trial_raw_; delta is the potential change.
  bool try_move(const Point& pt, std::size_t i, double& delta) {
    trial_orth_ = trial_raw_;
    if (!detail::gram_schmidt_rows(trial_orth_, kRankTol)) return false;
    delta = 0;
    for (std::size_t j = 0; j < pt.raw.size(); ++j) {
      if (j == i) continue;
      const double d = pair_distance(trial_orth_, pt.orth[j], metric_);
      if (!(d > offset_)) return false;
      new_dist_(Index(j)) = d;
      delta += 1.0 / (d - offset_) - 1.0 / (pt.dist(Index(i), Index(j)) - offset_);
    }
    return true;
  }

  Metric metric_;
  double offset_;
  Matrix trial_raw_;
  Matrix trial_orth_;
  Eigen::VectorXd new_dist_;
};

double min_off_diagonal(const Matrix& dist) {
  double best = kInf;
  for (Index i = 0; i < dist.rows(); ++i)
    for (Index j = i + 1; j < dist.cols(); ++j) best = std::min(best, dist(i, j));
  return best;
}

struct RestartOutcome {
  std::vector<Matrix> gens;
  std::vector<EpochRecord> trace;
};

RestartOutcome run_restart(Index m, Index n, Index count, const OptimConfig& config,
                           int restart) {
  const auto seed = config.seed;
  std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32),
                    std::uint32_t(restart)};
  std::mt19937_64 rng(seq);

  Point pt;
  if (restart == 0 && config.initial_packing) {
    pt.raw = generators_of(*config.initial_packing);
  } else {
    for (Index k = 0; k < count; ++k) pt.raw.push_back(random_plane(m, n, rng).generator());
  }

  PatternSearch search(config.metric, 0.0);
  search.refresh(pt);
  double current = min_off_diagonal(pt.dist);
  if (!(current > 0.0)) {
    // Coincident planes in a supplied start: begin below zero.
    search.set_offset(current - 1.0);
    search.refresh(pt);
  }

  // Each epoch works in a freshly rotated frame; `frame` maps back.
  Matrix frame = Matrix::Identity(m, m);
  const auto unrotated = [&](const std::vector<Matrix>& gens) {
    std::vector<Matrix> back;
    for (const auto& g : gens) back.push_back(g * frame.transpose());
    return back;
  };

  RestartOutcome out;
  out.gens = pt.orth;
  double best = current;
  double previous = current;
  int stalled = 0;
  for (int e = 0; e < config.max_epochs; ++e) {
    EpochRecord rec;
    rec.epoch = e;
    rec.offset = search.offset();
    // Start from normalized coordinates in a random frame. Distances are
    // rotation invariant, but the coordinate axes the search moves along are
    // not, which keeps it from stalling on ridges of a nonsmooth metric.
    const Matrix rotation = random_orthogonal(m, rng);
    frame = frame * rotation;
    for (auto& g : pt.orth) g = g * rotation;
    pt.raw = pt.orth;
    search.refresh(pt);
    rec.potential_before = pt.phi;
    pt = search.epoch(std::move(pt), config);
    search.refresh(pt);
    rec.potential_after = pt.phi;
    current = min_off_diagonal(pt.dist);
    rec.min_dist = current;
    out.trace.push_back(rec);
    if (current > best) {
      best = current;
      out.gens = unrotated(pt.orth);
    }
    stalled = (e > 0 && std::abs(current - previous) < config.min_improvement) ? stalled + 1 : 0;
    if (stalled >= config.patience) break;
    previous = current;
    search.set_offset(search.offset() + 0.5 * (current - search.offset()));
    search.rescore(pt);
  }
  return out;
}

}  // namespace

void OptimConfig::validate() const {
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (steps_per_epoch < 1) throw InvalidArgument("steps_per_epoch must be >= 1");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
    throw InvalidArgument("step_shrink must lie in (0, 1)");
  }
  if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be positive");
  if (!(min_step > 0.0)) throw InvalidArgument("min_step must be positive");
  if (max_epochs < 1) throw InvalidArgument("max_epochs must be >= 1");
  if (patience < 1) throw InvalidArgument("patience must be >= 1");
  if (metric == Metric::max_angle) {
    throw InvalidArgument("the optimizer supports chordal and geodesic metrics only");
  }
}

double potential(const Packingd& packing, double offset, Metric metric) {
  const double phi = potential_of(generators_of(packing), offset, metric);
  if (!(phi < kInf)) throw PoleCrossed("a pairwise distance is at or below the offset");
  return phi;
}

std::vector<Matrix> potential_gradient(const Packingd& packing, double offset,
                                       Metric metric) {
  const auto gens = generators_of(packing);
  const std::size_t count = gens.size();
  const Index m = packing.ambient_dim();
  std::vector<Matrix> grad(count, Matrix::Zero(packing.dim(), m));

  if (metric == Metric::chordal) {
    std::vector<Matrix> proj;
    for (const auto& g : gens) proj.push_back(g.transpose() * g);
    const Matrix eye = Matrix::Identity(m, m);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        if (i == j) continue;
        const double d = pair_distance(gens[i], gens[j], metric);
        if (!(d > offset)) throw PoleCrossed("a pairwise distance is at or below the offset");
        if (d == 0.0) continue;
        const double gap = d - offset;
        grad[i] += (gens[i] * proj[j] * (eye - proj[i])) / (gap * gap * d);
      }
    }
    return grad;
  }

  if (!(potential_of(gens, offset, metric) < kInf)) {
    throw PoleCrossed("a pairwise distance is at or below the offset");
  }
  constexpr double h = 1e-6;
  // Only the terms involving plane i change when plane i moves.
  auto partial = [&](std::size_t i, const Matrix& raw) {
    const Matrix moved = Planed::orthonormalize(raw).generator();
    double phi = 0;
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      phi += 1.0 / (pair_distance(moved, gens[j], metric) - offset);
    }
    return phi;
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (Index r = 0; r < gens[i].rows(); ++r) {
      for (Index c = 0; c < m; ++c) {
        Matrix plus = gens[i];
        Matrix minus = gens[i];
        plus(r, c) += h;
        minus(r, c) -= h;
        grad[i](r, c) = (partial(i, plus) - partial(i, minus)) / (2 * h);
      }
    }
  }
  return grad;
}

Packingd pattern_search_epoch(const Packingd& packing, double offset,
                              const OptimConfig& config) {
  config.validate();
  PatternSearch search(config.metric, offset);
  Point pt;
  pt.raw = generators_of(packing);
  search.refresh(pt);
  if (!(pt.phi < kInf)) throw PoleCrossed("a pairwise distance is at or below the offset");
  const double before = pt.phi;
  Point after = search.epoch(std::move(pt), config);
  search.refresh(after);
  if (!(after.phi <= before)) return packing;
  return packing_from(after.orth, packing.metric());
}

OptimResult optimize(Index m, Index n, Index count, const OptimConfig& config) {
  config.validate();
  if (n < 1 || n >= m) throw InvalidArgument("optimize needs 1 <= n < m");
  if (count < 2) throw InvalidArgument("optimize needs at least two planes");
  if (config.initial_packing) {
    const auto& init = *config.initial_packing;
    if (init.ambient_dim() != m || init.dim() != n || init.size() != count) {
      throw DimensionMismatch("initial packing does not match (m, n, N)");
    }
  }

  const int restarts = config.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  unsigned workers = config.threads == 0 ? std::thread::hardware_concurrency()
                                         : config.threads;
  workers = std::max(1u, std::min<unsigned>(workers, unsigned(restarts)));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < restarts; r = next++) {
      outcomes[std::size_t(r)] = run_restart(m, n, count, config, r);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::optional<OptimResult> best;
  for (int r = 0; r < restarts; ++r) {
    auto& outcome = outcomes[std::size_t(r)];
    Packingd packing = packing_from(outcome.gens, config.metric);
    const double value = min_distance(packing, config.metric).value;
    if (!best || value > best->min_dist) {
      best = OptimResult{std::move(packing), value, std::move(outcome.trace), r};
    }
  }
  return std::move(*best);
}

}  // namespace grasspack
