#include "grasspack/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "grasspack/binocular.hpp"

namespace grasspack {

namespace {

using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXi;

std::vector<long long> plane_key(const Planed& plane) {
  const MatrixXd proj = projection_matrix(plane).mat;
  std::vector<long long> key(std::size_t(proj.size()));
  for (Index k = 0; k < proj.size(); ++k) {
    key[std::size_t(k)] = std::llround(proj.data()[k] * 1e8);
  }
  return key;
}

// ---- binary codes over F_2^4 points -------------------------------------

// Evaluation points of F_2^4 in lexicographic order.
std::array<std::array<int, 4>, 16> f2_points() {
  std::array<std::array<int, 4>, 16> pts{};
  for (int x = 0; x < 16; ++x)
    for (int b = 0; b < 4; ++b) pts[std::size_t(x)][std::size_t(b)] = (x >> (3 - b)) & 1;
  return pts;
}

MatrixXi to_rows(const std::vector<std::vector<int>>& words) {
  MatrixXi rows(Index(words.size()), Index(words.front().size()));
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words[i].size(); ++j) rows(Index(i), Index(j)) = words[i][j];
  return rows;
}

int rank_f2(std::array<std::array<int, 4>, 4> mat) {
  int rank = 0;
  for (int c = 0; c < 4; ++c) {
    int pivot = -1;
    for (int r = rank; r < 4; ++r)
      if (mat[std::size_t(r)][std::size_t(c)]) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(mat[std::size_t(rank)], mat[std::size_t(pivot)]);
    for (int r = 0; r < 4; ++r) {
      if (r != rank && mat[std::size_t(r)][std::size_t(c)]) {
        for (int k = 0; k < 4; ++k)
          mat[std::size_t(r)][std::size_t(k)] ^= mat[std::size_t(rank)][std::size_t(k)];
      }
    }
    ++rank;
  }
  return rank;
}

constexpr std::array<std::pair<int, int>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::array<std::array<int, 4>, 4> alternating(int bits) {
  std::array<std::array<int, 4>, 4> mat{};
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if ((bits >> k) & 1) {
      const auto [i, j] = kPairs[k];
      mat[std::size_t(i)][std::size_t(j)] = mat[std::size_t(j)][std::size_t(i)] = 1;
    }
  }
  return mat;
}

bool nonsingular_difference(int a, int b) {
  return rank_f2(alternating(a ^ b)) == 4;
}

// Eight alternating forms on F_2^4, including 0, with nonsingular pairwise
// differences.
bool kerdock_set(std::vector<int>& chosen) {
  if (chosen.size() == 8) return true;
  for (int c = chosen.back() + 1; c < 64; ++c) {
    if (std::all_of(chosen.begin(), chosen.end(),
                    [&](int x) { return nonsingular_difference(c, x); })) {
      chosen.push_back(c);
      if (kerdock_set(chosen)) return true;
      chosen.pop_back();
    }
  }
  return false;
}

// ---- finite fields for the Paley construction ----------------------------

class FiniteField {
 public:
  explicit FiniteField(int q) : q_(q) {
    if (q < 2) throw InvalidArgument("field order must be at least 2");
    int n = q;
    for (int d = 2; d <= n; ++d) {
      if (n % d == 0) {
        p_ = d;
        break;
      }
    }
    degree_ = 0;
    while (n % p_ == 0) {
      n /= p_;
      ++degree_;
    }
    if (n != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    modulus_ = find_irreducible();
  }

  int order() const { return q_; }

  int sub(int a, int b) const {
    const auto x = digits(a);
    const auto y = digits(b);
    std::vector<int> z(static_cast<std::size_t>(degree_));
    for (int k = 0; k < degree_; ++k)
      z[std::size_t(k)] = ((x[std::size_t(k)] - y[std::size_t(k)]) % p_ + p_) % p_;
    return encode(z);
  }

  int mul(int a, int b) const {
    return encode(poly_mod(poly_mul(digits(a), digits(b)), modulus_));
  }

 private:
  std::vector<int> digits(int a) const {
    std::vector<int> d(static_cast<std::size_t>(degree_));
    for (int k = 0; k < degree_; ++k) {
      d[std::size_t(k)] = a % p_;
      a /= p_;
    }
    return d;
  }

  int encode(const std::vector<int>& d) const {
    int a = 0;
    for (int k = degree_ - 1; k >= 0; --k) a = a * p_ + d[std::size_t(k)];
    return a;
  }

  std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> c(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
    return c;
  }

  // Remainder modulo a monic polynomial (coefficients low to high).
  std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& monic) const {
    const std::size_t deg = monic.size() - 1;
    for (std::size_t i = a.size(); i-- > deg;) {
      const int coef = a[i];
      if (coef == 0) continue;
      for (std::size_t k = 0; k <= deg; ++k) {
        a[i - deg + k] = ((a[i - deg + k] - coef * monic[k]) % p_ + p_) % p_;
      }
    }
    a.resize(deg);
    return a;
  }

  bool divides(const std::vector<int>& monic, const std::vector<int>& poly) const {
    const auto r = poly_mod(poly, monic);
    return std::all_of(r.begin(), r.end(), [](int c) { return c == 0; });
  }

  std::vector<int> find_irreducible() const {
    const auto monic_of_degree = [&](int deg, int index) {
      std::vector<int> poly(std::size_t(deg) + 1, 0);
      poly[std::size_t(deg)] = 1;
      for (int k = 0; k < deg; ++k) {
        poly[std::size_t(k)] = index % p_;
        index /= p_;
      }
      return poly;
    };
    const auto power = [](int base, int e) {
      int r = 1;
      while (e-- > 0) r *= base;
      return r;
    };
    for (int index = 0; index < power(p_, degree_); ++index) {
      const auto candidate = monic_of_degree(degree_, index);
      bool reducible = false;
      for (int d = 1; d <= degree_ / 2 && !reducible; ++d) {
        for (int j = 0; j < power(p_, d) && !reducible; ++j) {
          reducible = divides(monic_of_degree(d, j), candidate);
        }
      }
      if (!reducible) return candidate;
    }
    throw InvalidArgument("no irreducible polynomial found");
  }

  int q_;
  int p_ = 0;
  int degree_ = 0;
  std::vector<int> modulus_;
};

// ---- plane helpers --------------------------------------------------------

Planed span_of(const std::vector<Eigen::VectorXd>& vectors) {
  MatrixXd raw(Index(vectors.size()), vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) raw.row(Index(i)) = vectors[i].transpose();
  return Planed::orthonormalize(raw);
}

// Orbit of the seed planes under the group generated by `generators`
// (orthogonal matrices acting on the right of generator matrices).
Packingd orbit(const std::vector<Planed>& seeds, const std::vector<MatrixXd>& generators) {
  std::set<std::vector<long long>> seen;
  std::vector<Planed> planes;
  std::deque<Planed> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    Planed plane = queue.front();
    queue.pop_front();
    if (!seen.insert(plane_key(plane)).second) continue;
    for (const auto& g : generators) {
      queue.push_back(Planed::orthonormalize(plane.generator() * g));
    }
    planes.push_back(std::move(plane));
  }
  return Packingd(std::move(planes));
}

MatrixXd permutation_matrix(Index m, const std::vector<std::vector<Index>>& cycles) {
  std::vector<Index> image(static_cast<std::size_t>(m));
  std::iota(image.begin(), image.end(), Index(0));
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      image[std::size_t(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
  }
  MatrixXd mat = MatrixXd::Zero(m, m);
  for (Index i = 0; i < m; ++i) mat(i, image[std::size_t(i)]) = 1.0;
  return mat;
}

}  // namespace

BinaryCode BinaryCode::from_rows(const MatrixXi& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) throw InvalidArgument("empty code");
  const bool zero_one = (rows.array() >= 0).all() && (rows.array() <= 1).all();
  const bool plus_minus = (rows.array().abs() == 1).all();
  if (!zero_one && !plus_minus) {
    throw InvalidArgument("codewords must use {0,1} or {-1,+1} entries");
  }
  BinaryCode code;
  code.length = rows.cols();
  std::set<std::vector<int>> distinct;
  for (Index i = 0; i < rows.rows(); ++i) {
    VectorXi word = rows.row(i).transpose();
    if (zero_one) word = (1 - 2 * word.array()).matrix();
    code.words.push_back(word);
    distinct.insert(std::vector<int>(word.data(), word.data() + word.size()));
  }
  code.closed_under_complement = std::all_of(
      code.words.begin(), code.words.end(), [&](const VectorXi& w) {
        const VectorXi c = -w;
        return distinct.count(std::vector<int>(c.data(), c.data() + c.size())) > 0;
      });
  return code;
}

Index BinaryCode::min_distance() const {
  Index best = length + 1;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const Index dist = (words[i].array() != words[j].array()).count();
      if (dist > 0) best = std::min(best, dist);
    }
  }
  return best > length ? 0 : best;
}

Fraction code_chordal_sq(const BinaryCode& code) {
  const long m = long(code.length);
  const long d = long(code.min_distance());
  return {4 * d * (m - d), m * m};
}

Packingd lines_from_code(const BinaryCode& code) {
  if (!code.closed_under_complement) {
    throw NotComplementClosed("code is not closed under complementation");
  }
  std::set<std::vector<int>> taken;
  std::vector<Planed> lines;
  for (const auto& word : code.words) {
    // One representative per complementary pair: first coordinate +1.
    const VectorXi rep = word(0) > 0 ? VectorXi(word) : VectorXi(-word);
    if (!taken.insert(std::vector<int>(rep.data(), rep.data() + rep.size())).second) continue;
    const MatrixXd row = rep.cast<double>().transpose() / std::sqrt(double(code.length));
    lines.push_back(Planed::orthonormalize(row));
  }
  return Packingd(std::move(lines));
}

BinaryCode shortened_hamming10() {
  const auto pts = f2_points();
  // Extended Hamming [16,11,4] = evaluations of polynomials of degree <= 2.
  std::vector<std::vector<int>> basis;
  basis.push_back(std::vector<int>(16, 1));
  for (int i = 0; i < 4; ++i) {
    std::vector<int> row(16);
    for (int x = 0; x < 16; ++x) row[std::size_t(x)] = pts[std::size_t(x)][std::size_t(i)];
    basis.push_back(row);
  }
  for (const auto& [i, j] : kPairs) {
    std::vector<int> row(16);
    for (int x = 0; x < 16; ++x) {
      row[std::size_t(x)] = pts[std::size_t(x)][std::size_t(i)] & pts[std::size_t(x)][std::size_t(j)];
    }
    basis.push_back(row);
  }
  std::vector<std::vector<int>> words;
  for (int mask = 0; mask < (1 << basis.size()); ++mask) {
    std::vector<int> w(16, 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if ((mask >> b) & 1)
        for (int x = 0; x < 16; ++x) w[std::size_t(x)] ^= basis[b][std::size_t(x)];
    }
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  // Shorten on the support of a weight-6 word: its complement (weight 10)
  // survives as the all-ones word of length 10.
  const auto six = std::find_if(words.begin(), words.end(), [](const std::vector<int>& w) {
    return std::accumulate(w.begin(), w.end(), 0) == 6;
  });
  const std::vector<int> support = *six;
  std::vector<std::vector<int>> shortened;
  for (const auto& w : words) {
    bool vanishes = true;
    std::vector<int> kept;
    for (int x = 0; x < 16; ++x) {
      if (support[std::size_t(x)]) {
        vanishes = vanishes && w[std::size_t(x)] == 0;
      } else {
        kept.push_back(w[std::size_t(x)]);
      }
    }
    if (vanishes) shortened.push_back(kept);
  }
  return BinaryCode::from_rows(to_rows(shortened));
}

BinaryCode nordstrom_robinson() {
  const auto pts = f2_points();
  std::vector<int> forms{0};
  kerdock_set(forms);
  std::vector<std::vector<int>> words;
  for (const int form : forms) {
    const auto mat = alternating(form);
    for (int affine = 0; affine < 32; ++affine) {
      std::vector<int> w(16);
      for (int x = 0; x < 16; ++x) {
        const auto& p = pts[std::size_t(x)];
        int value = affine & 1;
        for (int i = 0; i < 4; ++i) value ^= ((affine >> (i + 1)) & 1) & p[std::size_t(i)];
        for (const auto& [i, j] : kPairs) {
          value ^= mat[std::size_t(i)][std::size_t(j)] & p[std::size_t(i)] & p[std::size_t(j)];
        }
        w[std::size_t(x)] = value;
      }
      words.push_back(w);
    }
  }
  return BinaryCode::from_rows(to_rows(words));
}

BinaryCode repetition_code(Index length) {
  MatrixXi rows(2, length);
  rows.row(0).setZero();
  rows.row(1).setOnes();
  return BinaryCode::from_rows(rows);
}

MatrixXi paley_conference_matrix(int q) {
  if (q % 4 != 1) throw InvalidArgument("Paley conference matrices need q = 1 (mod 4)");
  const FiniteField field(q);
  std::vector<int> chi(std::size_t(q), -1);
  chi[0] = 0;
  for (int x = 1; x < q; ++x) chi[std::size_t(field.mul(x, x))] = 1;
  MatrixXi c = MatrixXi::Zero(q + 1, q + 1);
  for (int i = 1; i <= q; ++i) c(0, i) = c(i, 0) = 1;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) c(i + 1, j + 1) = chi[std::size_t(field.sub(i, j))];
  return c;
}

Packingd lines_from_conference_matrix(const MatrixXi& conference) {
  const Index order = conference.rows();
  if (order != conference.cols() || order < 2) {
    throw NotConferenceMatrix("conference matrix must be square");
  }
  if (order % 4 != 2) throw NotConferenceMatrix("order must be 2 (mod 4)");
  if (conference != conference.transpose()) throw NotConferenceMatrix("matrix is not symmetric");
  for (Index i = 0; i < order; ++i) {
    for (Index j = 0; j < order; ++j) {
      const int v = conference(i, j);
      if (i == j ? v != 0 : std::abs(v) != 1) {
        throw NotConferenceMatrix("need zero diagonal and +/-1 off the diagonal");
      }
    }
  }
  const Index q = order - 1;
  if (conference.transpose() * conference != MatrixXi::Identity(order, order) * q) {
    throw NotConferenceMatrix("C^T C != q I");
  }
  // Gram matrix of unit vectors with cosines +/- 1/sqrt(q); rank (q+1)/2.
  const MatrixXd gram = MatrixXd::Identity(order, order) +
                        conference.cast<double>() / std::sqrt(double(q));
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram);
  const Index m = order / 2;
  const MatrixXd factor =
      eig.eigenvectors().rightCols(m) *
      eig.eigenvalues().tail(m).cwiseMax(0.0).cwiseSqrt().asDiagonal();
  std::vector<Planed> lines;
  for (Index i = 0; i < order; ++i) lines.push_back(Planed::orthonormalize(factor.row(i)));
  return Packingd(std::move(lines));
}

Packingd diplo_simplex_lines(Index n) {
  if (n < 2) throw InvalidArgument("diplo-simplex needs n >= 2");
  // Helmert basis of the sum-zero hyperplane of R^(n+1).
  MatrixXd helmert = MatrixXd::Zero(n, n + 1);
  for (Index j = 1; j <= n; ++j) {
    helmert.row(j - 1).head(j).setConstant(1.0);
    helmert(j - 1, j) = -double(j);
    helmert.row(j - 1) /= std::sqrt(double(j * (j + 1)));
  }
  std::vector<Planed> lines;
  for (Index k = 0; k <= n; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n + 1, -1.0);
    v(k) = double(n);
    lines.push_back(Planed::orthonormalize((helmert * v).transpose()));
  }
  return Packingd(std::move(lines));
}

Packingd planes70_g84() {
  // Coordinates labelled inf, 0, 1, ..., 6 are stored at indices 0..7.
  const auto at = [](int label) { return Index(label + 1); };
  const Index inf = 0;
  MatrixXd first = MatrixXd::Zero(4, 8);
  first(0, inf) = first(1, at(0)) = first(2, at(1)) = first(3, at(3)) = 1.0;
  MatrixXd second = MatrixXd::Zero(4, 8);
  second(0, inf) = second(0, at(0)) = 1.0;
  second(1, at(1)) = second(1, at(3)) = 1.0;
  second(2, at(2)) = second(2, at(6)) = 1.0;
  second(3, at(4)) = second(3, at(5)) = 1.0;

  std::vector<MatrixXd> generators;
  generators.push_back(permutation_matrix(8, {{at(0), at(1), at(2), at(3), at(4), at(5), at(6)}}));
  generators.push_back(
      permutation_matrix(8, {{inf, at(0)}, {at(1), at(6)}, {at(2), at(3)}, {at(4), at(5)}}));
  generators.push_back(permutation_matrix(8, {{at(1), at(2), at(4)}, {at(3), at(6), at(5)}}));
  // Even sign changes are generated by negating coordinate pairs.
  for (Index k = 1; k < 8; ++k) {
    MatrixXd flip = MatrixXd::Identity(8, 8);
    flip(0, 0) = flip(k, k) = -1.0;
    generators.push_back(flip);
  }
  return orbit({Planed::orthonormalize(first), Planed::orthonormalize(second)}, generators);
}

Packingd planes28_g73() {
  const double root2 = std::sqrt(2.0);
  const std::array<std::array<double, 3>, 4> signs{
      {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  std::vector<Planed> planes;
  for (const auto& s : signs) {
    for (Index shift = 0; shift < 7; ++shift) {
      MatrixXd gen = MatrixXd::Zero(3, 7);
      for (Index r = 0; r < 3; ++r) {
        const Index power = Index(1) << r;  // 2^r
        gen(r, (power + shift) % 7) = 1.0;
        gen(r, (3 * power + shift) % 7) = s[std::size_t(r)] * root2;
      }
      planes.push_back(Planed::orthonormalize(gen));
    }
  }
  return unique_planes(planes);
}

Packingd planes18_g42() {
  std::vector<Eigen::VectorXd> minimal;
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 4; ++j)
      for (const double si : {1.0, -1.0})
        for (const double sj : {1.0, -1.0}) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
          v(i) = si;
          v(j) = sj;
          minimal.push_back(v);
        }
  std::vector<Planed> planes;
  for (std::size_t a = 0; a < minimal.size(); ++a)
    for (std::size_t b = a + 1; b < minimal.size(); ++b)
      if (minimal[a].dot(minimal[b]) == 0.0) planes.push_back(span_of({minimal[a], minimal[b]}));
  return unique_planes(planes);
}

Packingd planes6_g42() {
  const double root5 = std::sqrt(5.0);
  const double tau = (1.0 + root5) / 2.0;
  const double conj = (1.0 - root5) / 2.0;  // sqrt(5) -> -sqrt(5)
  const auto vertices = [](double t) {
    return std::vector<Eigen::Vector3d>{
        {0, 1, t}, {0, 1, -t}, {t, 0, 1}, {-t, 0, 1}, {1, t, 0}, {1, -t, 0}};
  };
  const auto left = vertices(tau);
  const auto right = vertices(conj);
  std::vector<Planed> planes;
  for (std::size_t k = 0; k < left.size(); ++k) {
    planes.push_back(lr_to_plane({left[k].normalized(), right[k].normalized()}));
  }
  return Packingd(std::move(planes));
}

Packingd planes10_g42() {
  const double theta = M_PI / 5.0;
  const double a = std::sqrt(2.0 / 3.0);
  const double c = std::sqrt(1.0 / 3.0);
  std::vector<Planed> planes;
  for (int r = 0; r < 10; ++r) {
    const Eigen::Vector3d left(a * std::cos(r * theta), a * std::sin(r * theta), c);
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    const Eigen::Vector3d right =
        sign * Eigen::Vector3d(a * std::cos(3 * r * theta), a * std::sin(3 * r * theta), c);
    planes.push_back(lr_to_plane({left, right}));
  }
  return Packingd(std::move(planes));
}

Packingd unique_planes(const std::vector<Planed>& planes, Metric metric) {
  std::set<std::vector<long long>> seen;
  std::vector<Planed> kept;
  for (const auto& p : planes) {
    if (seen.insert(plane_key(p)).second) kept.push_back(p);
  }
  return Packingd(std::move(kept), metric);
}

}  // namespace grasspack
