// momentkit command-line frontend.

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "momentkit/io.hpp"
#include "momentkit/momentkit.hpp"

namespace mk = momentkit;
using mk::io::Json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kNotMinimal = 1,
  kIndeterminate = 2,
  kInvalidInput = 3,
  kFailure = 4,
};

struct Common {
  std::uint64_t seed = 1;
  double tol = 1e-7;
  std::size_t max_iter = 50000;
  std::string out;
};

class Run {
 public:
  Run(std::string command, const Common& common, int argc, char** argv)
      : common_(common), start_(std::chrono::steady_clock::now()) {
    report_.command = std::move(command);
    report_.seed = common.seed;
    for (int i = 1; i < argc; ++i) report_.arguments.emplace_back(argv[i]);
  }

  std::string read_input(const std::string& path) {
    std::string text = mk::io::read_file(path);
    report_.inputs[path] = mk::io::fnv1a_hex(text);
    return text;
  }

  mk::Subspace subspace(const std::string& path) { return mk::io::parse_subspace(read_input(path), path); }

  void tolerance(const std::string& name, double value) { report_.tolerances[name] = value; }

  /// Primary output: --out if given, stdout otherwise.
  void emit(const std::string& content) {
    if (common_.out.empty()) {
      std::cout << content;
    } else {
      write_file(common_.out, content);
    }
  }

  void emit_sidecar(const std::string& suffix, const std::string& content) {
    if (common_.out.empty()) {
      std::cerr << content;
    } else {
      write_file(common_.out + suffix, content);
    }
  }

  void finish() {
    report_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (!common_.out.empty()) report_.outputs.push_back(common_.out + ".run.json");
    const std::string text = report_.to_json().dump(2) + "\n";
    if (common_.out.empty()) {
      std::cerr << text;
    } else {
      std::ofstream f(common_.out + ".run.json", std::ios::binary);
      f << text;
      if (!f) throw mk::Error("cannot write " + common_.out + ".run.json");
    }
  }

 private:
  void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw mk::Error("cannot write " + path);
    report_.outputs.push_back(path);
  }

  Common common_;
  mk::io::RunReport report_;
  std::chrono::steady_clock::time_point start_;
};

std::string csv_header(const std::string& prefix, mk::Index n) {
  std::string h;
  for (mk::Index i = 1; i <= n; ++i) h += (i > 1 ? "," : "") + prefix + std::to_string(i);
  return h;
}

std::vector<mk::RealVector> load_directions(Run& run, const std::string& arg, mk::Index n) {
  const std::string prefix = "fibonacci:";
  if (arg.rfind(prefix, 0) == 0) {
    std::size_t count = 0;
    try {
      count = std::stoul(arg.substr(prefix.size()));
    } catch (const std::exception&) {
      throw mk::InvalidArgument("bad --directions value '" + arg + "'");
    }
    if (count == 0) throw mk::InvalidArgument("direction count must be positive");
    return mk::fibonacci_directions(n, count);
  }
  return mk::io::parse_directions(run.read_input(arg), arg, n);
}

std::vector<mk::RealVector> normalized(std::vector<mk::RealVector> dirs) {
  for (auto& u : dirs) {
    const double norm = u.norm();
    if (!(norm > 0.0)) throw mk::InvalidArgument("direction must be nonzero");
    u /= norm;
  }
  return dirs;
}

mk::RealVector parse_real_list(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw mk::InvalidArgument("cannot parse number '" + cell + "'");
    }
  }
  mk::RealVector v(static_cast<mk::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<mk::Index>(i)) = vals[i];
  return v;
}

Json certificate_json(const mk::IntersectionCertificate& c) {
  Json j;
  j["status"] = mk::to_string(c.status);
  j["gap"] = c.gap;
  j["lower_bound"] = c.lower_bound;
  j["iterations"] = c.iterations;
  j["orthogonal_pair"] = c.orthogonal_pair;
  if (c.status == mk::IntersectionStatus::kIntersect) {
    j["common"] = mk::io::real_json(c.common);
    j["witness_y"] = mk::io::matrix_json(c.witness_y->matrix());
    j["witness_x"] = mk::io::matrix_json(c.witness_x->matrix());
  } else {
    j["closest_v"] = mk::io::real_json(c.common);
    j["closest_w"] = mk::io::real_json(c.other);
    j["direction"] = mk::io::real_json(c.direction);
    j["margin"] = c.margin;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentkit: moments of subspaces, joint numerical ranges and minimal matrices"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", common.tol, "feasibility tolerance")->capture_default_str();
    sub->add_option("--max-iter", common.max_iter, "iteration cap")->capture_default_str();
    sub->add_option("--out", common.out, "output file (stdout when omitted)");
  };

  std::string subspace_path, v_path, w_path, matrix_path, directions = "fibonacci:256";
  std::size_t count = 100, steps = 64, j = 1, k = 2;
  double eig_tol = 1e-8;
  std::string c_text, set = "moment";

  auto* sample = app.add_subcommand("moment-sample", "sample points |s|^2 of m_S");
  sample->add_option("--subspace", subspace_path, "subspace JSON")->required();
  sample->add_option("--count", count, "number of samples")->capture_default_str();

  auto* curve = app.add_subcommand("curve", "curve of extreme points from v^j towards v^k");
  curve->add_option("--subspace", subspace_path, "subspace JSON")->required();
  curve->add_option("--j", j, "start coordinate (1-based)")->required();
  curve->add_option("--k", k, "end coordinate (1-based)")->required();
  curve->add_option("--steps", steps, "grid intervals on [0, pi/2]")->capture_default_str();

  auto* minimal = app.add_subcommand("minimal-check", "decide minimality of a hermitian matrix");
  minimal->add_option("--matrix", matrix_path, "hermitian matrix JSON")->required();
  minimal->add_option("--eig-tol", eig_tol, "relative eigenspace width")->capture_default_str();

  auto* intersect = app.add_subcommand("intersect", "decide whether m_V and m_W meet");
  intersect->add_option("--v", v_path, "subspace JSON for V")->required();
  intersect->add_option("--w", w_path, "subspace JSON for W")->required();

  auto* support = app.add_subcommand("support", "support function of m_S or of W");
  support->add_option("--subspace", subspace_path, "subspace JSON")->required();
  support->add_option("--c", c_text, "direction, comma separated")->required();
  support->add_option("--set", set, "moment or jnr")
      ->check(CLI::IsMember({"moment", "jnr"}))
      ->capture_default_str();

  auto* boundary = app.add_subcommand("jnr-boundary", "boundary points of the joint numerical range");
  boundary->add_option("--subspace", subspace_path, "subspace JSON")->required();
  boundary->add_option("--directions", directions, "JSON file or fibonacci:<k>")->capture_default_str();

  auto* cent = app.add_subcommand("centroid", "centroid diag(P)/dim S");
  cent->add_option("--subspace", subspace_path, "subspace JSON")->required();

  auto* haus = app.add_subcommand("hausdorff", "support-based Hausdorff estimate between m_V and m_W");
  haus->add_option("--v", v_path, "subspace JSON for V")->required();
  haus->add_option("--w", w_path, "subspace JSON for W")->required();
  haus->add_option("--directions", directions, "JSON file or fibonacci:<k>")->capture_default_str();

  for (CLI::App* sub : {sample, curve, minimal, intersect, support, boundary, cent, haus}) add_common(sub);

  CLI11_PARSE(app, argc, argv);
  CLI::App* chosen = app.get_subcommands().front();

  try {
    Run run(chosen->get_name(), common, argc, argv);
    int code = kOk;

    if (chosen == sample) {
      const mk::Subspace s = run.subspace(subspace_path);
      std::ostringstream csv;
      mk::io::CsvWriter w(csv);
      w.header({csv_header("x", s.ambient_dim())});
      for (const mk::MomentPoint& p : mk::sample_moment(s, count, common.seed)) {
        const mk::RealVector& x = p.coordinates();
        w.row(std::vector<double>(x.data(), x.data() + x.size()));
      }
      run.emit(csv.str());
    } else if (chosen == curve) {
      const mk::Subspace s = run.subspace(subspace_path);
      if (j < 1 || k < 1) throw mk::InvalidArgument("coordinates are 1-based");
      if (steps < 1) throw mk::InvalidArgument("--steps must be at least 1");
      const mk::CurveFrame f = mk::curve_frame(s, j - 1, k - 1);
      std::ostringstream csv;
      mk::io::CsvWriter w(csv);
      w.header({"t", csv_header("m", s.ambient_dim()), "mod_j", "mod_k"});
      for (std::size_t i = 0; i <= steps; ++i) {
        const double t = i == steps ? mk::kHalfPi
                                    : mk::kHalfPi * static_cast<double>(i) / static_cast<double>(steps);
        const mk::CurveSample c = mk::curve_point(f, t);
        std::vector<double> row{t};
        row.insert(row.end(), c.m.data(), c.m.data() + c.m.size());
        row.push_back(std::abs(c.v(static_cast<mk::Index>(j - 1))));
        row.push_back(std::abs(c.v(static_cast<mk::Index>(k - 1))));
        w.row(row);
      }
      run.emit(csv.str());
      const mk::EllipseParams e = mk::ellipse_projection(f);
      Json side;
      side["j"] = j;
      side["k"] = k;
      side["a"] = {e.a(0), e.a(1)};
      side["b"] = {e.b(0), e.b(1)};
      side["t0"] = f.t0;
      side["segment"] = e.segment;
      run.emit_sidecar(".ellipse.json", side.dump(2) + "\n");
    } else if (chosen == minimal) {
      const std::string text = run.read_input(matrix_path);
      const mk::HermitianMatrix m(mk::io::parse_matrix(text, matrix_path));
      mk::MinimalityOptions opt;
      opt.eig_tol = eig_tol;
      opt.feasibility.tol = common.tol;
      opt.feasibility.max_iter = common.max_iter;
      run.tolerance("eig_tol", eig_tol);
      run.tolerance("tol", common.tol);
      const mk::MinimalityReport r = mk::check_minimal(m, opt);
      Json j_out;
      j_out["verdict"] = mk::to_string(r.verdict);
      j_out["norm"] = r.norm;
      j_out["lambda_max"] = r.lambda_max;
      j_out["lambda_min"] = r.lambda_min;
      j_out["symmetric"] = r.symmetric;
      j_out["clustered"] = r.clustered;
      j_out["eigenspace_max"] = mk::io::basis_json(r.v);
      j_out["eigenspace_min"] = mk::io::basis_json(r.w);
      j_out["certificate"] = r.certificate ? certificate_json(*r.certificate) : Json(nullptr);
      run.emit(j_out.dump(2) + "\n");
      code = r.verdict == mk::Verdict::kMinimal      ? kOk
             : r.verdict == mk::Verdict::kNotMinimal ? kNotMinimal
                                                     : kIndeterminate;
    } else if (chosen == intersect) {
      const mk::Subspace v = run.subspace(v_path);
      const mk::Subspace w = run.subspace(w_path);
      run.tolerance("tol", common.tol);
      const auto cert = mk::moments_intersect(v, w, {common.tol, common.max_iter});
      run.emit(certificate_json(cert).dump(2) + "\n");
    } else if (chosen == support) {
      const mk::Subspace s = run.subspace(subspace_path);
      const mk::RealVector c = parse_real_list(c_text);
      Json out;
      out["set"] = set;
      if (set == "moment") {
        const mk::SupportResult r = mk::support_moment(s, c);
        out["value"] = r.value;
        out["maximizer"] = mk::io::vector_json(r.maximizer);
        out["point"] = mk::io::real_json(r.maximizer.cwiseAbs2());
      } else {
        const mk::JNRSupport r = mk::jnr_support(s, c);
        out["value"] = r.value;
        out["point"] = mk::io::real_json(mk::delta_map(s, r.witness).x);
      }
      run.emit(out.dump(2) + "\n");
    } else if (chosen == boundary) {
      const mk::Subspace s = run.subspace(subspace_path);
      const auto dirs = load_directions(run, directions, s.ambient_dim());
      const auto pts = mk::jnr_boundary(s, dirs);
      std::ostringstream csv;
      mk::io::CsvWriter w(csv);
      w.header({csv_header("c", s.ambient_dim()), csv_header("x", s.ambient_dim())});
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> row(dirs[i].data(), dirs[i].data() + dirs[i].size());
        row.insert(row.end(), pts[i].x.data(), pts[i].x.data() + pts[i].x.size());
        w.row(row);
      }
      run.emit(csv.str());
    } else if (chosen == cent) {
      const mk::Subspace s = run.subspace(subspace_path);
      const mk::RealVector c = mk::centroid(s).coordinates();
      std::ostringstream csv;
      mk::io::CsvWriter w(csv);
      w.header({csv_header("c", s.ambient_dim())});
      w.row(std::vector<double>(c.data(), c.data() + c.size()));
      run.emit(csv.str());
    } else if (chosen == haus) {
      const mk::Subspace v = run.subspace(v_path);
      const mk::Subspace w = run.subspace(w_path);
      const auto dirs = normalized(load_directions(run, directions, v.ambient_dim()));
      const mk::HausdorffEstimate h = mk::hausdorff_moments(v, w, dirs);
      Json out;
      out["estimate"] = h.estimate;
      out["directions"] = dirs.size();
      out["projector_distance"] = h.projector_distance;
      out["projector_spectral"] = h.projector_spectral;
      out["hypothesis"] = h.hypothesis;
      out["bound"] = h.bound;
      out["bound_holds"] = h.bound_holds;
      run.emit(out.dump(2) + "\n");
    }

    run.finish();
    return code;
  } catch (const mk::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const mk::NotGenericAtCoordinate& e) {
    std::cerr << "error: no principal vector at coordinate " << e.index() + 1
              << " (P e_j vanishes)\n";
    return kInvalidInput;
  } catch (const mk::NotGeneric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const mk::DegenerateCurve& e) {
    std::cerr << "error: principal vectors " << e.j() + 1 << " and " << e.k() + 1
              << " are linearly dependent\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
