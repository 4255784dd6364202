#include <doctest.h>

#include "grasspack/core.hpp"
#include "oracles.hpp"

using namespace grasspack;
using Eigen::MatrixXd;

TEST_CASE("orthonormalize gives orthonormal rows spanning the same space") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  MatrixXd raw(3, 6);
  for (Index i = 0; i < raw.size(); ++i) raw.data()[i] = g(rng);
  const auto p = Planed::orthonormalize(raw);
  CHECK((p.generator() * p.generator().transpose() - MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK(oracle::chordal_sq_projection(p.generator(), oracle::orthonormal_rows(raw)) < 1e-20);
}

TEST_CASE("plane validation errors") {
  MatrixXd raw(2, 4);
  raw << 1, 0, 0, 0, 2, 0, 0, 0;
  CHECK_THROWS_AS(Planed::orthonormalize(raw), RankDeficient);
  MatrixXd bad(1, 3);
  bad << 1, 1, 0;
  CHECK_THROWS_AS(Planed::from_orthonormal(bad), NotOrthonormal);
  Packingd packing(4, 2);
  CHECK_THROWS_AS(packing.push_back(Planed::from_orthonormal(MatrixXd::Identity(1, 4))),
                  DimensionMismatch);
  CHECK_THROWS_AS(metric_from_string("taxicab"), InvalidArgument);
}

TEST_CASE("principal angles agree with the eigenvalue oracle") {
  std::mt19937_64 rng(3);
  for (Index m = 2; m <= 7; ++m) {
    for (Index n = 1; n < m; ++n) {
      for (int t = 0; t < 20; ++t) {
        const MatrixXd a = oracle::random_generator(m, n, rng);
        const MatrixXd b = oracle::random_generator(m, n, rng);
        const auto got = principal_angles(Planed::from_orthonormal(a), Planed::from_orthonormal(b));
        const auto want = oracle::angles(a, b);
        // acos of a square root loses accuracy near 0; compare sines and cosines.
        CHECK((got.angles.array().sin() - want.array().sin()).abs().maxCoeff() < 1e-7);
        CHECK((got.angles.array().cos() - want.array().cos()).abs().maxCoeff() < 1e-7);
      }
    }
  }
}

TEST_CASE("small angles keep full accuracy") {
  const double eps = 1e-9;
  MatrixXd a = MatrixXd::Zero(1, 3);
  a(0, 0) = 1;
  MatrixXd b(1, 3);
  b << std::cos(eps), std::sin(eps), 0;
  const auto theta = principal_angles(Planed::from_orthonormal(a), Planed::from_orthonormal(b));
  CHECK(theta.smallest() == doctest::Approx(eps).epsilon(1e-6));
}

TEST_CASE("distance examples") {
  const auto e = [](Index i, Index m) {
    MatrixXd row = MatrixXd::Zero(1, m);
    row(0, i) = 1;
    return Planed::from_orthonormal(row);
  };
  CHECK(chordal_distance(e(0, 2), e(1, 2)) == doctest::Approx(1.0));
  CHECK(geodesic_distance(e(0, 2), e(1, 2)) == doctest::Approx(M_PI / 2));
  CHECK(max_angle_distance(e(0, 3), e(2, 3)) == doctest::Approx(M_PI / 2));
  // Two coordinate planes meeting in a line in R^4.
  MatrixXd a = MatrixXd::Zero(2, 4), b = MatrixXd::Zero(2, 4);
  a(0, 0) = a(1, 1) = 1;
  b(0, 0) = b(1, 2) = 1;
  const auto p = Planed::from_orthonormal(a), q = Planed::from_orthonormal(b);
  CHECK(chordal_distance_squared(p, q) == doctest::Approx(1.0));
  CHECK(geodesic_distance(p, q) == doctest::Approx(M_PI / 2));
  CHECK(distance(p, q, Metric::max_angle) == doctest::Approx(M_PI / 2));
  CHECK(chordal_distance(p, p) == doctest::Approx(0.0));
}

TEST_CASE("metric axioms on random planes") {
  std::mt19937_64 rng(5);
  for (const Metric metric : {Metric::chordal, Metric::geodesic, Metric::max_angle}) {
    for (int t = 0; t < 300; ++t) {
      const Index m = 3 + t % 5, n = 1 + t % (m - 1);
      const auto p = random_plane(m, n, rng), q = random_plane(m, n, rng), r = random_plane(m, n, rng);
      const double pq = distance(p, q, metric), qr = distance(q, r, metric), pr = distance(p, r, metric);
      CHECK(pq >= 0);
      CHECK(distance(p, p, metric) < 1e-7);
      CHECK(std::abs(pq - distance(q, p, metric)) < 1e-12);
      CHECK(pr <= pq + qr + 1e-12);
    }
  }
}

TEST_CASE("distances are invariant under rotations and basis changes") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Index m = 2 + t % 7, n = 1 + t % (m - 1);
    const auto p = random_plane(m, n, rng), q = random_plane(m, n, rng);
    const MatrixXd rot = random_orthogonal(m, rng);
    const MatrixXd basis = random_orthogonal(n, rng);
    const auto p2 = Planed::from_orthonormal(basis * p.generator() * rot);
    const auto q2 = Planed::from_orthonormal(q.generator() * rot);
    CHECK(std::abs(chordal_distance(p, q) - chordal_distance(p2, q2)) < 1e-10);
    CHECK(std::abs(geodesic_distance(p, q) - geodesic_distance(p2, q2)) < 1e-8);
  }
}

TEST_CASE("chordal distance from angles equals the projection form") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    const Index m = 2 + t % 7, n = 1 + t % (m - 1);
    const auto p = random_plane(m, n, rng), q = random_plane(m, n, rng);
    const double want = oracle::chordal_sq(p, q);
    CHECK(std::abs(chordal_distance_squared(p, q) - want) < 1e-12);
    CHECK(std::abs(chordal_distance_squared_fast(p, q) - want) < 1e-12);
    const double proj = chordal_from_projection(projection_matrix(p), projection_matrix(q));
    CHECK(std::abs(proj * proj - want) < 1e-12);
  }
}

TEST_CASE("projection matrices lie on a sphere") {
  std::mt19937_64 rng(17);
  for (Index m = 2; m <= 8; ++m) {
    for (Index n = 1; n < m; ++n) {
      const auto pm = projection_matrix(random_plane(m, n, rng));
      CHECK(pm.trace() == doctest::Approx(double(n)));
      CHECK((pm.mat * pm.mat - pm.mat).norm() < 1e-12);
      CHECK(std::abs(pm.detraced().squaredNorm() - double(n * (m - n)) / double(m)) < 1e-9);
      if (2 * n == m) {
        const MatrixXd half = pm.mat - 0.5 * MatrixXd::Identity(m, m);
        CHECK(std::abs(half.squaredNorm() - double(m) / 4) < 1e-9);
      }
    }
  }
  const auto p = projection_matrix(random_plane(4, 2, rng));
  const auto q = projection_matrix(random_plane(4, 1, rng));
  CHECK_THROWS_AS(chordal_from_projection(p, q), DimensionMismatch);
}

TEST_CASE("complements") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 50; ++t) {
    const Index m = 3 + t % 5, n = 1 + t % (m - 1);
    const auto p = random_plane(m, n, rng), q = random_plane(m, n, rng);
    const auto pc = complement(p), qc = complement(q);
    CHECK(pc.dim() == m - n);
    CHECK((p.generator() * pc.generator().transpose()).norm() < 1e-12);
    CHECK(std::abs(chordal_distance(p, q) - chordal_distance(pc, qc)) < 1e-10);
  }
}

TEST_CASE("min_distance and distance_matrix") {
  MatrixXd lines(3, 2);
  lines << 1, 0, 0, 1, std::sqrt(0.5), std::sqrt(0.5);
  Packingd packing(2, 1);
  for (Index i = 0; i < 3; ++i) packing.push_back(Planed::orthonormalize(lines.row(i)));
  const auto best = min_distance(packing);
  CHECK(best.value == doctest::Approx(std::sin(M_PI / 4)));
  CHECK(best.first == 0);
  CHECK(best.second == 2);
  const auto d = distance_matrix(packing, Metric::chordal);
  CHECK(d(0, 1) == doctest::Approx(1.0));
  CHECK(d(1, 0) == d(0, 1));
  Packingd single(2, 1);
  single.push_back(packing[0]);
  CHECK_THROWS_AS(min_distance(single), InvalidArgument);
  CHECK(line_angle_degrees(1.0) == doctest::Approx(90.0));
}

TEST_CASE("planes work in single and extended precision") {
  std::mt19937_64 rng(23);
  const auto pf = random_plane<float>(5, 2, rng), qf = random_plane<float>(5, 2, rng);
  const auto pd = pf.cast<double>(), qd = qf.cast<double>();
  CHECK(std::abs(double(chordal_distance(pf, qf)) - chordal_distance(pd, qd)) < 1e-5);
  const auto pl = pd.cast<long double>(), ql = qd.cast<long double>();
  CHECK(std::abs(double(geodesic_distance(pl, ql)) - geodesic_distance(pd, qd)) < 1e-10);
}
