#pragma once

// Explicit packings: line packings from binary codes, conference matrices and
// diplo-simplices, and the special plane packings in G(4,2), G(7,3), G(8,4).

#include <Eigen/Dense>

#include <vector>

#include "grasspack/core.hpp"

namespace grasspack {

/// A binary code with codewords written as +/-1 vectors (0 -> +1, 1 -> -1).
struct BinaryCode {
  Index length = 0;
  std::vector<Eigen::VectorXi> words;
  bool closed_under_complement = false;

  /// Rows are codewords, entries either all in {0,1} or all in {-1,+1}.
  static BinaryCode from_rows(const Eigen::MatrixXi& rows);

  /// Minimum Hamming distance between distinct codewords.
  Index min_distance() const;
};

/// Exact value of 4 d (m - d) / m^2 as numerator / denominator.
struct Fraction {
  long numerator = 0;
  long denominator = 1;
  double value() const { return double(numerator) / double(denominator); }
};
Fraction code_chordal_sq(const BinaryCode& code);

/// M/2 lines in G(m,1), one per complementary pair of codewords.
Packingd lines_from_code(const BinaryCode& code);

/// [10,5,4] shortening of the [16,11,4] extended Hamming code, chosen to
/// contain the all-ones word.
BinaryCode shortened_hamming10();
/// The (16, 256, 6) Nordstrom-Robinson code, built as a Kerdock code.
BinaryCode nordstrom_robinson();
BinaryCode repetition_code(Index length);

/// Symmetric Paley conference matrix of order q + 1 for a prime power
/// q = 1 (mod 4).
Eigen::MatrixXi paley_conference_matrix(int q);

/// q + 1 equiangular lines in R^((q+1)/2) from a symmetric conference matrix
/// of order q + 1 = 2 (mod 4).
Packingd lines_from_conference_matrix(const Eigen::MatrixXi& conference);

/// The n + 1 lines through the vectors (n, -1, ..., -1) and their
/// permutations, written in coordinates of the sum-zero hyperplane of R^(n+1).
Packingd diplo_simplex_lines(Index n);

/// 70 planes in G(8,4) meeting the orthoplex bound, d_c^2 = 2.
Packingd planes70_g84();
/// 28 planes in G(7,3) meeting the simplex bound, d_c^2 = 16/9.
Packingd planes28_g73();
/// 18 planes in G(4,2) spanned by perpendicular pairs of D4 minimal vectors.
Packingd planes18_g42();
/// 6 planes in G(4,2) whose left and right codes are an icosahedron matched
/// to its algebraic conjugate, d_c^2 = 6/5.
Packingd planes6_g42();
/// 10 planes in G(4,2) from the decagonal-prism binocular code, a regular
/// simplex with d_c^2 = 10/9.
Packingd planes10_g42();

/// Drops repeated planes, keyed on projection matrices rounded at 1e-8.
Packingd unique_planes(const std::vector<Planed>& planes, Metric metric = Metric::chordal);

}  // namespace grasspack
