#pragma once

// Text packing files.
//
//   # optional comment lines
//   m n N metric
//   N blocks of n rows, each with m reals
//
// Reals are written with 17 significant digits.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

#include "grasspack/core.hpp"

namespace grasspack {

/// Rows with drift above this are rejected; smaller drift is repaired.
inline constexpr double kParseDriftTol = 1e-6;

Packingd parse_packing(std::istream& in);
void write_packing(std::ostream& out, const Packingd& packing,
                   const std::vector<std::string>& comments = {});

/// "-" reads standard input.
Packingd read_packing_file(const std::string& path, std::istream& stdin_stream);
void write_packing_file(const std::string& path, const Packingd& packing,
                        const std::vector<std::string>& comments = {});

/// Whitespace-separated integer rows ('#' comments allowed); all rows must
/// have the same length.
Eigen::MatrixXi parse_int_matrix(std::istream& in);

/// Three reals per line; points are normalized to the unit sphere.
std::vector<Eigen::Vector3d> parse_points(std::istream& in);

/// Cycle as one line of 0-based plane indices.
void write_tour(std::ostream& out, const std::vector<Index>& order);

}  // namespace grasspack
