#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "momentkit/io.hpp"

namespace fs = std::filesystem;
using momentkit::io::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("momentkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

Outcome run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(MOMENTKIT_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const std::string kExampleV = R"({"n": 3, "vectors": [[[1,0],[1,0],[0,0]], [[0,0],[1,0],[1,0]]]})";
const std::string kE1 = R"({"n": 3, "vectors": [[[1,0],[0,0],[0,0]]]})";
const std::string kPlusI = R"({"n": 2, "vectors": [[[1,0],[0,1]]]})";
const std::string kMinusI = R"({"n": 2, "vectors": [[[1,0],[0,-1]]]})";

}  // namespace

TEST(Cli, MomentSampleRowsSumToOne) {
  const auto v = write("v.json", kExampleV);
  const auto r = run("moment-sample --subspace " + v.string() + " --count 3 --seed 7");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 3u);
    EXPECT_NEAR(row[0] + row[1] + row[2], 1.0, 1e-10);
  }
  EXPECT_NE(r.err.find("\"seed\": 7"), std::string::npos);
}

TEST(Cli, MomentSampleOfCoordinateLine) {
  const auto e = write("e1.json", kE1);
  const auto r = run("moment-sample --subspace " + e.string() + " --count 4 --seed 123");
  ASSERT_EQ(r.code, 0);
  for (const auto& row : csv_rows(r.out)) {
    ASSERT_EQ(row.size(), 3u);
    EXPECT_NEAR(row[0], 1.0, 1e-15);
    EXPECT_EQ(row[1], 0.0);
    EXPECT_EQ(row[2], 0.0);
  }
}

TEST(Cli, MalformedJsonIsDiagnosed) {
  const auto bad = write("bad.json", "{\"n\": 3,\n\"vectors\": [[[1,0]\n");
  const auto r = run("moment-sample --subspace " + bad.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_NE(run("moment-sample --subspace /nonexistent.json").code, 0);
  EXPECT_NE(run("no-such-command").code, 0);
}

TEST(Cli, CurveStartsAtThePrincipalMoment) {
  const auto v = write("v.json", kExampleV);
  const fs::path out = work_dir() / "curve.csv";
  const auto r = run("curve --subspace " + v.string() + " --j 1 --k 2 --steps 4 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(slurp(out));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(rows[0][1], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(rows[0][2], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(rows[0][3], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(rows[4][0], std::acos(-1.0) / 2, 0.0);
  const Json side = Json::parse(slurp(out.string() + ".ellipse.json"));
  EXPECT_FALSE(side["segment"].get<bool>());
  EXPECT_NEAR(side["b"][1].get<double>(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(fs::exists(out.string() + ".run.json"));
}

TEST(Cli, CurveSegmentAndErrors) {
  const auto s = write("seg.json", R"({"n": 3, "vectors": [[[1,0],[0,0],[1,0]], [[0,0],[1,0],[0,0]]]})");
  const fs::path out = work_dir() / "seg.csv";
  ASSERT_EQ(run("curve --subspace " + s.string() + " --j 1 --k 2 --out " + out.string()).code, 0);
  EXPECT_TRUE(Json::parse(slurp(out.string() + ".ellipse.json"))["segment"].get<bool>());

  const auto same = run("curve --subspace " + s.string() + " --j 2 --k 2");
  EXPECT_EQ(same.code, 3);
  const auto e = write("e1.json", kE1);
  const auto missing = run("curve --subspace " + e.string() + " --j 1 --k 3");
  EXPECT_EQ(missing.code, 3);
  EXPECT_NE(missing.err.find("coordinate 3"), std::string::npos) << missing.err;
}

TEST(Cli, MinimalCheckExitCodes) {
  const auto y = write("y.json", R"({"n": 2, "entries": [[[0,0],[0,-1]], [[0,1],[0,0]]]})");
  const auto r0 = run("minimal-check --matrix " + y.string());
  EXPECT_EQ(r0.code, 0);
  EXPECT_EQ(Json::parse(r0.out)["verdict"], "MINIMAL");

  const auto d = write("d.json", R"({"n": 2, "entries": [[[1,0],[0,0]], [[0,0],[-1,0]]]})");
  EXPECT_EQ(run("minimal-check --matrix " + d.string()).code, 1);

  // Lines v, w perp v with |v|^2 = (1/2 + e, 1/2 - e): moments 2 sqrt2 e apart.
  const double e = 1.8e-11;
  const double a = std::sqrt(0.5 + e), b = std::sqrt(0.5 - e);
  Json m;
  m["n"] = 2;
  m["entries"] = {{{a * a - b * b, 0}, {2 * a * b, 0}}, {{2 * a * b, 0}, {b * b - a * a, 0}}};
  const auto t = write("tangent.json", m.dump());
  EXPECT_EQ(run("minimal-check --matrix " + t.string() + " --tol 1e-12").code, 2);

  const auto nh = write("nh.json", R"({"n": 2, "entries": [[[0,0],[1,0]], [[2,0],[0,0]]]})");
  const auto r3 = run("minimal-check --matrix " + nh.string());
  EXPECT_EQ(r3.code, 3);
  EXPECT_NE(r3.err.find("not hermitian"), std::string::npos);
}

TEST(Cli, ThinWrappers) {
  const auto v = write("v.json", kExampleV);
  const auto c = run("centroid --subspace " + v.string());
  ASSERT_EQ(c.code, 0);
  const auto centroid_rows = csv_rows(c.out);
  ASSERT_EQ(centroid_rows.size(), 1u);
  for (double x : centroid_rows[0]) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);

  const auto whole = write("c3.json", R"({"n": 3, "vectors": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[1,0]]]})");
  const auto s = run("support --subspace " + whole.string() + " --c 3,1,2");
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NEAR(Json::parse(s.out)["value"].get<double>(), 3.0, 1e-12);
  const auto sj = run("support --subspace " + v.string() + " --c 1,0,0 --set jnr");
  EXPECT_NEAR(Json::parse(sj.out)["value"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_NE(run("support --subspace " + v.string() + " --c 1,0").code, 0);

  const auto p = write("p.json", kPlusI), q = write("q.json", kMinusI);
  const auto i = run("intersect --v " + p.string() + " --w " + q.string());
  ASSERT_EQ(i.code, 0);
  const Json cert = Json::parse(i.out);
  EXPECT_EQ(cert["status"], "INTERSECT");
  EXPECT_NEAR(cert["common"][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(cert["common"][1].get<double>(), 0.5, 1e-12);

  const auto h = run("hausdorff --v " + p.string() + " --w " + q.string() + " --directions fibonacci:32");
  ASSERT_EQ(h.code, 0);
  EXPECT_LE(Json::parse(h.out)["estimate"].get<double>(), 1e-12);

  const auto dirs = write("dirs.json", "[[1,0,0],[0,-2,0]]");
  const auto b = run("jnr-boundary --subspace " + v.string() + " --directions " + dirs.string());
  ASSERT_EQ(b.code, 0) << b.err;
  const auto rows = csv_rows(b.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0][3], 2.0 / 3.0, 1e-12);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const auto v = write("v.json", kExampleV);
  const std::vector<std::string> commands{
      "moment-sample --subspace " + v.string() + " --count 50 --seed 11",
      "curve --subspace " + v.string() + " --j 1 --k 3 --steps 16",
      "jnr-boundary --subspace " + v.string() + " --directions fibonacci:64",
  };
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string outputs[2], reports[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = work_dir() / ("det" + std::to_string(c) + "_" + std::to_string(rep) + ".out");
      ASSERT_EQ(run(commands[c] + " --out " + out.string()).code, 0);
      outputs[rep] = slurp(out);
      Json report = Json::parse(slurp(out.string() + ".run.json"));
      report.erase("wall_time_seconds");
      report.erase("arguments");
      report.erase("outputs");
      reports[rep] = report.dump();
    }
    EXPECT_EQ(outputs[0], outputs[1]) << commands[c];
    EXPECT_EQ(reports[0], reports[1]) << commands[c];
  }
}
