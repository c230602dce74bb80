#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "capsweep/capacity.hpp"
#include "capsweep/io.hpp"
#include "capsweep/sweep.hpp"
#include "support.hpp"

using namespace capsweep;
using namespace capsweep::testing;

namespace {

namespace fs = std::filesystem;

/// Unique scratch directory removed when the test block ends.
struct TempDir {
  fs::path path;

  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("capsweep_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string file(const std::string& name) const { return (path / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    const std::string p = file(name);
    std::ofstream out(p);
    out << content;
    return p;
  }
};

}  // namespace

TEST_CASE("csv tables parse with and without a header") {
  TempDir dir;
  const std::string plain = dir.write("plain.csv", "1,2\n3,4\n");
  Eigen::MatrixXd m = read_matrix_csv(plain);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 1) == 4.0);

  const std::string headed = dir.write("headed.csv", "x,y\n1,2\n3,4\n");
  Eigen::MatrixXd h = read_matrix_csv(headed);
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 1) == 2.0);

  const std::string spaced = dir.write("spaced.csv", " 1 , 2 \n\n 3 , 4 \n");
  Eigen::MatrixXd s = read_matrix_csv(spaced);
  REQUIRE(s.rows() == 2);
  CHECK(s(1, 0) == 3.0);
}

TEST_CASE("csv tables reject malformed input naming the row") {
  TempDir dir;
  const std::string ragged = dir.write("ragged.csv", "1,2\n3\n");
  CHECK_THROWS_WITH_AS(read_matrix_csv(ragged),
                       doctest::Contains("row 2 has 1 cells, expected 2"), ParseError);

  const std::string midword = dir.write("midword.csv", "1,2\n3,oops\n");
  CHECK_THROWS_WITH_AS(read_matrix_csv(midword), doctest::Contains("row 2"), ParseError);

  const std::string empty = dir.write("empty.csv", "\n \n");
  CHECK_THROWS_WITH_AS(read_matrix_csv(empty), doctest::Contains("no data rows"), ParseError);

  CHECK_THROWS_WITH_AS(read_matrix_csv(dir.file("missing.csv")), doctest::Contains("cannot open"),
                       ParseError);
}

TEST_CASE("atomic writes land whole and leave no temp files") {
  TempDir dir;
  const std::string target = dir.file("nested/deeper/out.txt");
  atomic_write_text(target, "hello\n");

  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "hello\n");
  CHECK_FALSE(fs::exists(target + ".tmp"));

  atomic_write_text(target, "replaced");
  std::ifstream again(target);
  std::string replaced((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
  CHECK(replaced == "replaced");
}

TEST_CASE("doubles survive the round trip through their printed form") {
  for (double v : {1.0 / 3.0, 0.1, 1e-17, 12345.678901234567, -2.5e-300, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv lines join cells with commas") {
  CHECK(csv_line({"a", "b", "c"}) == "a,b,c\n");
  CHECK(csv_line({"only"}) == "only\n");
  CHECK(csv_line({}) == "\n");
}

TEST_CASE("json serialization shapes") {
  KernelMatrix k = kernel({{2, 1}, {1, 2}});

  SUBCASE("a measure is a plain array of weights") {
    json j = to_json(measure({0.5, 0.0}));
    REQUIRE(j.is_array());
    CHECK(j[0].get<double>() == 0.5);
    CHECK(j[1].get<double>() == 0.0);
  }

  SUBCASE("capacity report gains gcapa only for set problems") {
    CapacityReport field_rep = check_duality(k, field({1, 1}));
    json jf = to_json(field_rep);
    CHECK(jf.contains("c"));
    CHECK(jf.contains("gamma"));
    CHECK(jf.contains("duality_gap"));
    CHECK_FALSE(jf.contains("gcapa"));

    CapacityReport set_rep = check_duality(k, IndexSet{0, 1});
    json js = to_json(set_rep);
    REQUIRE(js.contains("gcapa"));
    CHECK(js["gcapa"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }

  SUBCASE("sweep report carries residuals but not internals") {
    SweepReport rep = balayage(k, Measure::unit_at(2, 1), IndexSet{0});
    json j = to_json(rep);
    CHECK(j.contains("swept"));
    CHECK(j.contains("c_value"));
    CHECK(j.contains("residual_a"));
    CHECK(j.contains("residual_b"));
    CHECK(j.contains("energy_identity_gap"));
    CHECK(j.contains("is_proper"));
    CHECK_FALSE(j.contains("dual_gap"));
  }

  SUBCASE("principle rows carry k only when it means something") {
    PrincipleReport max_row;
    max_row.principle = Principle::Maximum;
    max_row.holds = true;
    max_row.k = 1.0;
    json jm = to_json(max_row);
    CHECK(jm["principle"].get<std::string>() == "maximum");
    CHECK(jm.contains("k"));
    CHECK_FALSE(jm.contains("witness"));

    PrincipleReport dom_row;
    dom_row.principle = Principle::Domination;
    dom_row.holds = false;
    PrincipleWitness w;
    w.mu = measure({0.0, 1.0});
    w.omega = measure({1.0, 0.0});
    w.site = 0;
    w.amount = 0.25;
    dom_row.witness = w;
    json jd = to_json(dom_row);
    CHECK(jd["principle"].get<std::string>() == "domination");
    CHECK_FALSE(jd.contains("k"));
    REQUIRE(jd.contains("witness"));
    CHECK(jd["witness"]["site"].get<int>() == 0);
    CHECK(jd["witness"].contains("omega"));
  }

  SUBCASE("envelope report names both residuals") {
    EnvelopeReport rep;
    rep.measure = measure({0.0, 0.0});
    rep.support_residual = 1e-12;
    rep.global_residual = 2e-12;
    json j = to_json(rep);
    CHECK(j["support_residual"].get<double>() == 1e-12);
    CHECK(j["global_residual"].get<double>() == 2e-12);
  }
}

TEST_CASE("measures parse from arrays and the unit shorthand") {
  Measure m = measure_from_json(json::parse("[0.25, 0.75]"), 2);
  CHECK(m[0] == 0.25);
  CHECK(m[1] == 0.75);

  Measure u = measure_from_json(json("unit_at:1"), 3);
  CHECK(u[1] == 1.0);
  CHECK(u.total_mass() == 1.0);

  CHECK_THROWS_AS(measure_from_json(json::parse("[1, 2, 3]"), 2), DimensionMismatch);
  CHECK_THROWS_AS(measure_from_json(json::parse("[1, -1]"), 2), NegativeEntry);
  CHECK_THROWS_AS(measure_from_json(json::parse("[1, \"x\"]"), 2), ParseError);
  CHECK_THROWS_AS(measure_from_json(json("delta:3"), 4), ParseError);
  CHECK_THROWS_AS(measure_from_json(json("unit_at:abc"), 4), ParseError);
  CHECK_THROWS_AS(measure_from_json(json::object(), 2), ParseError);
  CHECK_THROWS_AS(measure_from_json(json("unit_at:9"), 4), IndexOutOfRange);
}

TEST_CASE("configs load with paths resolved beside the file") {
  TempDir dir;
  const std::string path = dir.write("run.json", R"({
    "task": "sweep",
    "kernel": {"matrix": [[2, 1], [1, 2]]},
    "params": {"set": [0]},
    "seed": 7,
    "tol": 1e-10,
    "out": "results/out.json",
    "csv": "/abs/path.csv"
  })");

  ExperimentConfig config = load_config(path);
  CHECK(config.task == "sweep");
  CHECK(config.seed == 7);
  REQUIRE(config.tol.has_value());
  CHECK(*config.tol == 1e-10);
  CHECK(config.out == (dir.path / "results/out.json").string());
  CHECK(config.csv == "/abs/path.csv");
  CHECK(config.params["set"][0].get<int>() == 0);
}

TEST_CASE("config loading reports parse failures with the file name") {
  TempDir dir;
  const std::string broken = dir.write("broken.json", "{ nope");
  CHECK_THROWS_WITH_AS(load_config(broken), doctest::Contains("broken.json"), ParseError);

  const std::string array = dir.write("array.json", "[1, 2]");
  CHECK_THROWS_WITH_AS(load_config(array), doctest::Contains("JSON object"), ParseError);

  CHECK_THROWS_WITH_AS(load_config(dir.file("absent.json")), doctest::Contains("cannot open"),
                       ParseError);
}

TEST_CASE("kernels build from each config source") {
  TempDir dir;

  SUBCASE("inline matrix") {
    ExperimentConfig config;
    config.kernel = json::parse(R"({"matrix": [[2, 1], [1, 2]]})");
    KernelMatrix k = kernel_from_config(config);
    CHECK(k.size() == 2);
    CHECK(k.entries()(0, 1) == 1.0);
  }

  SUBCASE("matrix csv resolves relative to the config directory") {
    dir.write("k.csv", "2,1\n1,2\n");
    ExperimentConfig config;
    config.base_dir = dir.path.string();
    config.kernel = json::parse(R"({"matrix_csv": "k.csv"})");
    KernelMatrix k = kernel_from_config(config);
    CHECK(k.size() == 2);
    CHECK(k.entries()(1, 0) == 1.0);
  }

  SUBCASE("distance-power kernel with each diagonal rule") {
    ExperimentConfig config;
    config.kernel = json::parse(R"({
      "riesz": {"points": [[0, 0], [1, 0]], "alpha": 1.0,
                "diag_rule": {"kind": "constant", "value": 5.0}}
    })");
    KernelMatrix k = kernel_from_config(config);
    CHECK(k.entries()(0, 0) == 5.0);
    CHECK(k.entries()(0, 1) == 1.0);

    config.kernel["riesz"]["diag_rule"] = json::parse(R"({"kind": "cell_self_energy", "h": 0.5})");
    KernelMatrix kc = kernel_from_config(config);
    CHECK(kc.entries()(0, 0) == doctest::Approx(2.0).epsilon(1e-12));

    config.kernel["riesz"].erase("diag_rule");
    KernelMatrix ka = kernel_from_config(config);
    CHECK(ka.entries()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("rejections") {
    ExperimentConfig config;
    CHECK_THROWS_WITH_AS(kernel_from_config(config), doctest::Contains("kernel block"), ParseError);

    config.kernel = json::object();
    CHECK_THROWS_WITH_AS(kernel_from_config(config),
                         doctest::Contains("matrix, matrix_csv or riesz"), ParseError);

    config.kernel = json::parse(R"({"matrix": [[1]], "riesz": {"points": [[0]]}})");
    CHECK_THROWS_WITH_AS(kernel_from_config(config), doctest::Contains("exactly one source"),
                         ParseError);

    config.kernel = json::parse(R"({"riesz": {"alpha": 1.0}})");
    CHECK_THROWS_WITH_AS(kernel_from_config(config), doctest::Contains("points"), ParseError);

    config.kernel = json::parse(R"({"riesz": {"points": [[0], [1]],
                                    "diag_rule": {"kind": "mystery"}}})");
    CHECK_THROWS_WITH_AS(kernel_from_config(config), doctest::Contains("mystery"), ParseError);

    config.kernel = json::parse(R"({"riesz": {"points": [[0], [1]],
                                    "diag_rule": {"kind": "constant"}}})");
    CHECK_THROWS_WITH_AS(kernel_from_config(config), doctest::Contains("needs a value"),
                         ParseError);
  }
}
