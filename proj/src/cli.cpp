#include "grasspack/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "grasspack/analysis.hpp"
#include "grasspack/binocular.hpp"
#include "grasspack/bounds.hpp"
#include "grasspack/constructions.hpp"
#include "grasspack/io.hpp"
#include "grasspack/optimizer.hpp"

namespace grasspack {

namespace {

struct Infeasible : Error {
  using Error::Error;
};

std::string fmt(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

std::string degrees(double radians) { return fmt("%.4f", radians * 180.0 / M_PI); }

std::string angle_list(const Eigen::VectorXd& angles) {
  std::string s;
  for (Index k = 0; k < angles.size(); ++k) {
    if (k > 0) s += ' ';
    s += degrees(angles(k));
  }
  return s;
}

// Worker count: requested (0 = all cores), capped by GRASSPACK_THREADS.
unsigned worker_count(unsigned requested) {
  unsigned threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* cap = std::getenv("GRASSPACK_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || value < 1) {
      throw InvalidArgument("GRASSPACK_THREADS must be a positive integer");
    }
    threads = std::min(threads, unsigned(value));
  }
  return threads;
}

std::vector<Eigen::Vector3d> read_points(const std::string& path, std::istream& in) {
  if (path == "-") return parse_points(in);
  std::ifstream file(path);
  if (!file) throw InvalidArgument("cannot open " + path);
  return parse_points(file);
}

Eigen::MatrixXi read_int_matrix(const std::string& path, std::istream& in) {
  if (path == "-") return parse_int_matrix(in);
  std::ifstream file(path);
  if (!file) throw InvalidArgument("cannot open " + path);
  return parse_int_matrix(file);
}

// Packing to --out, or to stdout when no file is given.
void emit_packing(const Packingd& packing, const std::string& path, std::ostream& out,
                  const std::vector<std::string>& comments) {
  if (path.empty() || path == "-") {
    write_packing(out, packing, comments);
  } else {
    write_packing_file(path, packing, comments);
  }
}

void report_min(std::ostream& out, const Packingd& packing, Metric metric) {
  const auto best = min_distance(packing, metric);
  const auto theta = principal_angles(packing[best.first], packing[best.second]).angles;
  out << "min_distance " << fmt("%.10f", best.value) << '\n';
  out << "min_distance_sq " << fmt("%.10f", best.value * best.value) << '\n';
  out << "min_pair " << best.first << ' ' << best.second << '\n';
  out << "angles_deg " << angle_list(theta) << '\n';
}

Index parse_index(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw InvalidArgument(what + " must be an integer");
  return Index(value);
}

Packingd construct(const std::string& name, const std::vector<std::string>& args,
                   const std::string& matrix_path, std::istream& in,
                   std::vector<std::string>& comments) {
  const auto arg = [&](std::size_t k, const std::string& what) {
    if (k >= args.size()) throw InvalidArgument(name + " needs " + what);
    return parse_index(args[k], what);
  };
  comments.push_back(name);
  if (name == "planes70-g84") return planes70_g84();
  if (name == "planes28-g73") return planes28_g73();
  if (name == "planes18-g42") return planes18_g42();
  if (name == "planes6-g42") return planes6_g42();
  if (name == "planes10-g42") return planes10_g42();
  if (name == "diplo") return diplo_simplex_lines(arg(0, "n"));
  if (name == "hamming10") return lines_from_code(shortened_hamming10());
  if (name == "nordstrom-robinson") return lines_from_code(nordstrom_robinson());
  if (name == "repetition") return lines_from_code(repetition_code(arg(0, "length")));
  if (name == "conference") {
    if (!matrix_path.empty()) return lines_from_conference_matrix(read_int_matrix(matrix_path, in));
    return lines_from_conference_matrix(paley_conference_matrix(int(arg(0, "q"))));
  }
  if (name == "code") {
    if (matrix_path.empty()) throw InvalidArgument("code needs --matrix FILE");
    return lines_from_code(BinaryCode::from_rows(read_int_matrix(matrix_path, in)));
  }
  throw InvalidArgument("unknown construction '" + name + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"grasspack: packings of n-planes in R^m"};
  app.require_subcommand(1);

  std::string metric_name = "chordal";
  std::string out_path;

  auto* opt = app.add_subcommand("optimize", "search for a packing of N planes in G(m,n)");
  long m = 0, n = 0, count = 0;
  OptimConfig config;
  std::string init_path;
  opt->add_option("m", m)->required();
  opt->add_option("n", n)->required();
  opt->add_option("N", count)->required();
  opt->add_option("--metric", metric_name, "chordal or geodesic");
  opt->add_option("--restarts", config.restarts);
  opt->add_option("--seed", config.seed);
  opt->add_option("--steps", config.steps_per_epoch, "pattern moves per epoch");
  opt->add_option("--epochs", config.max_epochs);
  opt->add_option("--threads", config.threads, "0 uses every core");
  opt->add_option("--init", init_path, "start restart 0 from this packing");
  opt->add_option("--out", out_path);

  std::string file;
  auto* eval = app.add_subcommand("eval", "minimum distance and angles of a packing");
  std::string eval_metric;
  eval->add_option("FILE", file)->required();
  eval->add_option("--metric", eval_metric, "restrict to one metric");

  auto* aud = app.add_subcommand("audit", "compare with the simplex and orthoplex bounds");
  aud->add_option("FILE", file)->required();

  auto* con = app.add_subcommand("construct", "build a known packing");
  std::string name;
  std::vector<std::string> con_args;
  std::string matrix_path;
  con->add_option("NAME", name, "planes70-g84 planes28-g73 planes18-g42 planes6-g42 "
                                 "planes10-g42 diplo hamming10 nordstrom-robinson "
                                 "repetition conference code")
      ->required();
  con->add_option("ARGS", con_args);
  con->add_option("--matrix", matrix_path, "integer matrix file (conference matrix or code)");
  con->add_option("--out", out_path);

  auto* emb = app.add_subcommand("embed", "embedding dimension and sphere coordinates");
  bool no_points = false;
  emb->add_option("FILE", file)->required();
  emb->add_option("--metric", metric_name);
  emb->add_flag("--no-points", no_points);

  auto* mat = app.add_subcommand("match", "binocular matching of antipodal point sets");
  std::string right_path;
  std::optional<double> min_value;
  mat->add_option("POINTSFILE", file, "left code, 3 reals per line")->required();
  mat->add_option("--right", right_path, "right code (defaults to the left one)");
  mat->add_option("--min", min_value, "only test feasibility of this objective");
  mat->add_option("--out", out_path);

  auto* tr = app.add_subcommand("tour", "short Hamiltonian cycle under chordal distance");
  tr->add_option("FILE", file)->required();
  tr->add_option("--out", out_path, ".ham file");

  auto* conv = app.add_subcommand("convert-binocular", "G(4,2) planes <-> (l, r) pairs");
  bool reverse = false;
  conv->add_option("FILE", file)->required();
  conv->add_flag("--to-planes", reverse, "read 6 reals per line and write a packing");
  conv->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (opt->parsed()) {
      config.metric = metric_from_string(metric_name);
      config.threads = worker_count(config.threads);
      if (!init_path.empty()) config.initial_packing = read_packing_file(init_path, in);
      const auto result = optimize(m, n, count, config);
      std::ostream& report = (out_path == "-") ? err : out;
      report << "G(" << m << "," << n << ") N " << count << " metric "
             << to_string(config.metric) << '\n';
      report << "restart " << result.restart_index << " of " << config.restarts << '\n';
      report_min(report, result.packing, config.metric);
      if (!out_path.empty()) {
        emit_packing(result.packing, out_path, out,
                     {"optimize " + std::to_string(m) + " " + std::to_string(n) + " " +
                      std::to_string(count) + " seed " + std::to_string(config.seed)});
      }
    } else if (eval->parsed()) {
      const auto packing = read_packing_file(file, in);
      std::vector<Metric> metrics{Metric::chordal, Metric::geodesic, Metric::max_angle};
      if (!eval_metric.empty()) metrics = {metric_from_string(eval_metric)};
      out << "G(" << packing.ambient_dim() << "," << packing.dim() << ") N " << packing.size()
          << '\n';
      for (const Metric metric : metrics) {
        out << "[" << to_string(metric) << "]\n";
        report_min(out, packing, metric);
      }
    } else if (aud->parsed()) {
      const auto r = audit(read_packing_file(file, in));
      out << "G(" << r.m << "," << r.n << ") N " << r.count << " D " << r.embedding_dim << '\n';
      out << "simplex_bound " << fmt("%.14f", r.simplex_bound) << '\n';
      out << "orthoplex_bound "
          << (r.orthoplex_bound ? fmt("%.14f", *r.orthoplex_bound) : std::string("n/a")) << '\n';
      out << "achieved " << fmt("%.14f", r.achieved) << '\n';
      out << "ratio " << fmt("%.14f", r.ratio) << '\n';
      out << "meets " << (r.meets ? "yes" : "no") << '\n';
    } else if (con->parsed()) {
      std::vector<std::string> comments;
      const auto packing = construct(name, con_args, matrix_path, in, comments);
      emit_packing(packing, out_path, out, comments);
    } else if (emb->parsed()) {
      const auto packing = read_packing_file(file, in);
      const auto r = embedding_dimension(packing, metric_from_string(metric_name));
      out << "found_dim " << r.found_dim << '\n';
      out << "theory_dim " << r.theory_dim << '\n';
      out << "sphere_radius " << fmt("%.12f", r.sphere_radius) << '\n';
      out << "centroid_radius " << fmt("%.12f", r.centroid_radius_min) << ' '
          << fmt("%.12f", r.centroid_radius_max) << '\n';
      out << "eigenvalues";
      for (Index k = 0; k < r.gram_eigenvalues.size(); ++k) {
        out << ' ' << fmt("%.6g", r.gram_eigenvalues(k));
      }
      out << '\n';
      if (r.negative_eigenvalue) {
        err << "warning: negative eigenvalue, distances are not Euclidean\n";
      }
      if (!no_points) {
        const auto pts = embed_points(packing);
        out << "points " << pts.rows() << ' ' << pts.cols() << '\n';
        for (Index i = 0; i < pts.rows(); ++i) {
          for (Index j = 0; j < pts.cols(); ++j) out << (j ? " " : "") << fmt("%.17g", pts(i, j));
          out << '\n';
        }
      }
    } else if (mat->parsed()) {
      const auto left = read_points(file, in);
      const auto right = right_path.empty() ? left : read_points(right_path, in);
      Matching found;
      if (min_value) {
        auto solved = solve_matching(left, right, *min_value);
        if (!solved) throw Infeasible("no matching reaches " + fmt("%.12g", *min_value));
        found = std::move(*solved);
      } else {
        found = best_matching(left, right);
      }
      std::ostream& report = (out_path == "-") ? err : out;
      report << "objective " << fmt("%.12f", found.objective) << '\n';
      report << "perm";
      for (const Index p : found.perm) report << ' ' << p;
      report << '\n';
      if (!out_path.empty()) emit_packing(matching_to_packing(found), out_path, out, {"match"});
    } else if (tr->parsed()) {
      const auto t = tour(read_packing_file(file, in));
      out << "length " << fmt("%.12f", t.total_length) << '\n';
      out << "edges " << fmt("%.12f", t.min_edge) << ' ' << fmt("%.12f", t.max_edge) << '\n';
      out << "order";
      for (const Index k : t.order) out << ' ' << k;
      out << '\n';
      if (!out_path.empty()) {
        std::ofstream ham(out_path);
        if (!ham) throw InvalidArgument("cannot write " + out_path);
        write_tour(ham, t.order);
      }
    } else if (conv->parsed()) {
      if (reverse) {
        std::ifstream file_stream;
        std::istream* src = &in;
        if (file != "-") {
          file_stream.open(file);
          if (!file_stream) throw InvalidArgument("cannot open " + file);
          src = &file_stream;
        }
        std::vector<Planed> planes;
        std::string line;
        while (std::getline(*src, line)) {
          const auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') continue;
          std::istringstream fields(line);
          Eigen::Vector3d l, r;
          std::string extra;
          if (!(fields >> l.x() >> l.y() >> l.z() >> r.x() >> r.y() >> r.z()) ||
              (fields >> extra)) {
            throw ParseError("expected six reals per line");
          }
          if (l.norm() < 1e-12 || r.norm() < 1e-12) throw ParseError("zero vector");
          planes.push_back(lr_to_plane({l.normalized(), r.normalized()}));
        }
        if (planes.empty()) throw ParseError("no pairs");
        emit_packing(Packingd(std::move(planes)), out_path, out, {"convert-binocular"});
      } else {
        const auto packing = read_packing_file(file, in);
        for (const auto& plane : packing) {
          const auto lr = plane_to_lr(plane);
          for (Index k = 0; k < 3; ++k) out << fmt("%.17g", lr.left(k)) << ' ';
          for (Index k = 0; k < 3; ++k) out << fmt("%.17g", lr.right(k)) << (k < 2 ? " " : "\n");
        }
      }
    }
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace grasspack
