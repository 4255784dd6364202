#include <doctest.h>

#include <chrono>
#include <set>

#include "grasspack/bounds.hpp"
#include "grasspack/constructions.hpp"
#include "oracles.hpp"

using namespace grasspack;
using Eigen::MatrixXd;
using Eigen::MatrixXi;

namespace {

double degrees(double chordal_sq) { return std::asin(std::sqrt(chordal_sq)) * 180.0 / M_PI; }

// All pairwise chordal distances squared, rounded to 1e-9.
std::set<long long> distance_spectrum(const Packingd& packing) {
  std::set<long long> out;
  for (Index i = 0; i < packing.size(); ++i)
    for (Index j = i + 1; j < packing.size(); ++j)
      out.insert(std::llround(oracle::chordal_sq(packing[i], packing[j]) * 1e9));
  return out;
}

}  // namespace

TEST_CASE("binary codes") {
  MatrixXi rows(4, 3);
  rows << 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0;
  const auto code = BinaryCode::from_rows(rows);
  CHECK(code.length == 3);
  CHECK(code.closed_under_complement);
  CHECK(code.min_distance() == 1);
  CHECK(code.words[1] == Eigen::VectorXi::Constant(3, -1));
  MatrixXi open(2, 3);
  open << 0, 0, 0, 0, 1, 1;
  CHECK(!BinaryCode::from_rows(open).closed_under_complement);
  CHECK_THROWS_AS(lines_from_code(BinaryCode::from_rows(open)), NotComplementClosed);
  MatrixXi junk(1, 2);
  junk << 0, 2;
  CHECK_THROWS_AS(BinaryCode::from_rows(junk), InvalidArgument);
}

TEST_CASE("lines from codes reach 4d(m-d)/m^2") {
  const auto check = [](const BinaryCode& code, Index lines, long num, long den) {
    const auto frac = code_chordal_sq(code);
    CHECK(frac.numerator * den == num * frac.denominator);
    const auto packing = lines_from_code(code);
    CHECK(packing.size() == lines);
    if (lines > 1) CHECK(std::abs(oracle::min_chordal_sq(packing) - frac.value()) < 1e-12);
  };
  const auto hamming = shortened_hamming10();
  CHECK(hamming.length == 10);
  CHECK(hamming.words.size() == 32);
  CHECK(hamming.min_distance() == 4);
  check(hamming, 16, 24, 25);  // 0.96

  const auto nr = nordstrom_robinson();
  CHECK(nr.length == 16);
  CHECK(nr.words.size() == 256);
  CHECK(nr.min_distance() == 6);
  check(nr, 128, 15, 16);

  check(repetition_code(5), 1, 0, 1);
}

TEST_CASE("shortened Hamming lines meet the simplex bound") {
  const auto r = audit(lines_from_code(shortened_hamming10()));
  CHECK(r.m == 10);
  CHECK(r.count == 16);
  CHECK(r.simplex_bound == doctest::Approx(0.96));
  CHECK(r.achieved == doctest::Approx(0.96));
  CHECK(r.meets);
}

TEST_CASE("Paley conference matrices") {
  for (const int q : {5, 9, 13, 17, 25, 29}) {
    const MatrixXi c = paley_conference_matrix(q);
    CHECK(c.rows() == q + 1);
    CHECK(c == c.transpose());
    CHECK(c.diagonal().isZero());
    CHECK(c.transpose() * c == q * MatrixXi::Identity(q + 1, q + 1));
    const auto lines = lines_from_conference_matrix(c);
    CHECK(lines.size() == q + 1);
    CHECK(lines.ambient_dim() == (q + 1) / 2);
    // Equiangular: |cos| = 1/sqrt(q) for every pair.
    const auto spectrum = distance_spectrum(lines);
    CHECK(spectrum.size() == 1);
    CHECK(std::abs(oracle::min_chordal_sq(lines) - (1.0 - 1.0 / q)) < 1e-12);
  }
  CHECK(degrees(oracle::min_chordal_sq(lines_from_conference_matrix(paley_conference_matrix(5)))) ==
        doctest::Approx(63.4349).epsilon(1e-6));
  CHECK_THROWS_AS(paley_conference_matrix(7), InvalidArgument);
  CHECK_THROWS_AS(paley_conference_matrix(21), InvalidArgument);
}

TEST_CASE("conference matrix validation") {
  MatrixXi c = paley_conference_matrix(5);
  MatrixXi broken = c;
  broken(1, 2) = broken(2, 1) = -broken(1, 2);
  CHECK_THROWS_AS(lines_from_conference_matrix(broken), NotConferenceMatrix);
  broken = c;
  broken(0, 0) = 1;
  CHECK_THROWS_AS(lines_from_conference_matrix(broken), NotConferenceMatrix);
  CHECK_THROWS_AS(lines_from_conference_matrix(MatrixXi::Zero(4, 4)), NotConferenceMatrix);
  CHECK_THROWS_AS(lines_from_conference_matrix(MatrixXi::Zero(6, 5)), NotConferenceMatrix);
}

TEST_CASE("diplo-simplex lines") {
  for (Index n = 2; n <= 8; ++n) {
    const auto lines = diplo_simplex_lines(n);
    CHECK(lines.size() == n + 1);
    CHECK(lines.ambient_dim() == n);
    CHECK(distance_spectrum(lines).size() == 1);
    CHECK(std::abs(oracle::min_chordal_sq(lines) - (1.0 - 1.0 / double(n * n))) < 1e-12);
  }
  CHECK(degrees(oracle::min_chordal_sq(diplo_simplex_lines(4))) == doctest::Approx(75.5225).epsilon(1e-6));
  CHECK_THROWS_AS(diplo_simplex_lines(1), InvalidArgument);
}

TEST_CASE("70 planes in G(8,4)") {
  const auto start = std::chrono::steady_clock::now();
  const auto packing = planes70_g84();
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
  CHECK(packing.size() == 70);
  CHECK(packing.dim() == 4);
  CHECK(std::abs(oracle::min_chordal_sq(packing) - 2.0) < 1e-12);
  // Planes come in complementary pairs, at chordal distance squared n = 4.
  Index complements = 0;
  for (Index i = 0; i < 70; ++i)
    for (Index j = i + 1; j < 70; ++j)
      complements += std::abs(oracle::chordal_sq(packing[i], packing[j]) - 4.0) < 1e-9;
  CHECK(complements == 35);
}

TEST_CASE("28 planes in G(7,3)") {
  const auto packing = planes28_g73();
  CHECK(packing.size() == 28);
  CHECK(std::abs(oracle::min_chordal_sq(packing) - 16.0 / 9.0) < 1e-9);
  CHECK(distance_spectrum(packing).size() == 1);
}

TEST_CASE("18 planes in G(4,2)") {
  const auto packing = planes18_g42();
  CHECK(packing.size() == 18);
  CHECK(std::abs(oracle::min_chordal_sq(packing) - 1.0) < 1e-12);
  const auto spectrum = distance_spectrum(packing);
  CHECK(spectrum == std::set<long long>{1000000000, 2000000000});
}

TEST_CASE("6 and 10 planes in G(4,2)") {
  const auto six = planes6_g42();
  CHECK(six.size() == 6);
  CHECK(std::abs(oracle::min_chordal_sq(six) - 1.2) < 1e-12);
  const auto ten = planes10_g42();
  CHECK(ten.size() == 10);
  CHECK(std::abs(oracle::min_chordal_sq(ten) - 10.0 / 9.0) < 1e-12);
  CHECK(distance_spectrum(ten).size() == 1);
}

TEST_CASE("unique_planes") {
  std::mt19937_64 rng(61);
  const auto p = random_plane(5, 2, rng);
  const auto q = random_plane(5, 2, rng);
  const MatrixXd basis = random_orthogonal(2, rng);
  const auto p2 = Planed::from_orthonormal(basis * p.generator());
  CHECK(unique_planes({p, q, p2, q}).size() == 2);
  // Sorted entries would tie these two; full entries do not.
  MatrixXd a = MatrixXd::Zero(2, 4), b = MatrixXd::Zero(2, 4);
  a(0, 0) = a(1, 1) = 1;
  b(0, 2) = b(1, 3) = 1;
  CHECK(unique_planes({Planed::from_orthonormal(a), Planed::from_orthonormal(b)}).size() == 2);
}
