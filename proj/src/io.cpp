#include "grasspack/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace grasspack {

namespace {

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line, long& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string where(long lineno) { return "line " + std::to_string(lineno) + ": "; }

}  // namespace

Packingd parse_packing(std::istream& in) {
  std::string line;
  long lineno = 0;
  if (!next_data_line(in, line, lineno)) throw ParseError("missing header");
  std::istringstream header(line);
  long m = 0, n = 0, count = 0;
  std::string tag;
  if (!(header >> m >> n >> count >> tag)) {
    throw ParseError(where(lineno) + "header must be 'm n N metric'");
  }
  std::string extra;
  if (header >> extra) throw ParseError(where(lineno) + "trailing text in header");
  if (m < 2 || n < 1 || n >= m || count < 0) {
    throw ParseError(where(lineno) + "need m >= 2, 1 <= n < m, N >= 0");
  }
  Metric metric;
  try {
    metric = metric_from_string(tag);
  } catch (const Error&) {
    throw ParseError(where(lineno) + "unknown metric '" + tag + "'");
  }

  std::vector<std::vector<double>> rows;
  while (next_data_line(in, line, lineno)) {
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double value = 0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ParseError(where(lineno) + "bad number '" + token + "'");
      row.push_back(value);
    }
    if (long(row.size()) != m) {
      throw ParseError(where(lineno) + "expected " + std::to_string(m) + " entries, got " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (long(rows.size()) != n * count) {
    throw CountMismatch("header promises " + std::to_string(n * count) + " rows, found " +
                        std::to_string(rows.size()));
  }

  Packingd packing(m, n, metric);
  for (long k = 0; k < count; ++k) {
    MatrixX<double> gen(n, m);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < m; ++j) gen(i, j) = rows[std::size_t(k * n + i)][std::size_t(j)];
    const double drift = detail::orthonormality_drift(gen);
    if (drift > kParseDriftTol) {
      throw NotOrthonormal("plane " + std::to_string(k) + " is not orthonormal (drift " +
                           format_real(drift) + ")");
    }
    packing.push_back(drift > kOrthonormalTol ? Planed::orthonormalize(gen)
                                              : Planed::from_orthonormal(gen));
  }
  return packing;
}

void write_packing(std::ostream& out, const Packingd& packing,
                   const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << packing.ambient_dim() << ' ' << packing.dim() << ' ' << packing.size() << ' '
      << to_string(packing.metric()) << '\n';
  for (const auto& plane : packing) {
    const auto& gen = plane.generator();
    for (Index i = 0; i < gen.rows(); ++i) {
      for (Index j = 0; j < gen.cols(); ++j) {
        if (j > 0) out << ' ';
        out << format_real(gen(i, j));
      }
      out << '\n';
    }
  }
}

Packingd read_packing_file(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") return parse_packing(stdin_stream);
  std::ifstream file(path);
  if (!file) throw InvalidArgument("cannot open " + path);
  return parse_packing(file);
}

void write_packing_file(const std::string& path, const Packingd& packing,
                        const std::vector<std::string>& comments) {
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot write " + path);
  write_packing(file, packing, comments);
}

Eigen::MatrixXi parse_int_matrix(std::istream& in) {
  std::string line;
  long lineno = 0;
  std::vector<std::vector<int>> rows;
  while (next_data_line(in, line, lineno)) {
    std::istringstream fields(line);
    std::vector<int> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ParseError(where(lineno) + "bad integer '" + token + "'");
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(where(lineno) + "ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  Eigen::MatrixXi mat(Index(rows.size()), Index(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) mat(Index(i), Index(j)) = rows[i][j];
  return mat;
}

std::vector<Eigen::Vector3d> parse_points(std::istream& in) {
  std::string line;
  long lineno = 0;
  std::vector<Eigen::Vector3d> points;
  while (next_data_line(in, line, lineno)) {
    std::istringstream fields(line);
    Eigen::Vector3d p;
    std::string extra;
    if (!(fields >> p.x() >> p.y() >> p.z()) || (fields >> extra)) {
      throw ParseError(where(lineno) + "expected three reals");
    }
    if (p.norm() < 1e-12) throw ParseError(where(lineno) + "zero vector");
    points.push_back(p.normalized());
  }
  return points;
}

void write_tour(std::ostream& out, const std::vector<Index>& order) {
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) out << ' ';
    out << order[k];
  }
  out << '\n';
}

}  // namespace grasspack
