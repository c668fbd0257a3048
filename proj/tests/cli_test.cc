#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "toricheight/cli.h"

using namespace toricheight;

namespace {

const std::string kData = TORIC_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "toric_height");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("toric_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("height reports") {
  Run r = run({"height", kData + "/cubic.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("7*log(2) + 3*log(3)") != std::string::npos);
  CHECK(r.out.find("8.147867") != std::string::npos);
  CHECK(run({"height", kData + "/plane_curve.json", "--format", "symbolic"}).out ==
        "3*log(3)\n");
  const std::string ones = temp_file("ones.json",
                                     R"({"exponents": [[0],[1],[2]], "coefficients": [1, 1, 1]})");
  CHECK(run({"height", ones, "--format", "symbolic"}).out == "0\n");
  CHECK(run({"height", kData + "/cubic.json", "--format", "decimal", "--bits", "32"})
            .out.rfind("8.147867", 0) == 0);
}

TEST_CASE("json output is stable") {
  Run r = run({"height", kData + "/cubic.json", "--format", "json"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["value"]["coefficients"]["constant"] == "0");
  CHECK(doc["value"]["coefficients"]["2"] == "7");
  CHECK(doc["value"]["coefficients"]["3"] == "3");
  CHECK(doc["degree"] == "3");
  CHECK(doc["dim"] == 1);
  CHECK(doc["per_place"].size() == 3);
  CHECK(doc["per_place"][1]["place"] == "2");
  CHECK(run({"height", kData + "/cubic.json", "--format", "json"}).out == r.out);
}

TEST_CASE("other commands") {
  CHECK(run({"chow-weight", kData + "/chow_example.json", "--format", "symbolic"}).out == "-2\n");
  CHECK(run({"multiheight", kData + "/two_embeddings.json", "--format", "symbolic"}).out ==
        "4*log(2)\n");
  CHECK(run({"degree", kData + "/cubic.json", "--format", "symbolic"}).out == "3\n");
  CHECK(run({"hnorm", kData + "/cubic.json", "--degree", "1", "--format", "symbolic"}).out ==
        "0\n");
  CHECK(run({"hilbert", kData + "/cubic.json", "--degree", "1", "--place", "2", "--format",
             "symbolic"})
            .out == "-log(2)\n");
  CHECK(run({"mixed-integral", kData + "/two_embeddings.json", "--place", "3", "--format",
             "symbolic"})
            .out == "log(3)\n");
  const std::string segs = temp_file(
      "segs.json", R"([{"exponents": [[0,0],[2,1]]}, {"exponents": [[0,0],[-1,3]]}])");
  CHECK(run({"mixed-volume", segs, "--format", "symbolic"}).out == "7\n");
  CHECK(run({"mixed-volume", kData + "/two_embeddings.json"}).code == 3);
  Run orbits = run({"orbits", kData + "/cubic.json", "--format", "json"});
  CHECK(nlohmann::json::parse(orbits.out)["orbits"].size() == 3);
}

TEST_CASE("compose round trips") {
  Run v = run({"compose", "veronese", kData + "/cubic.json", "--degree", "2"});
  REQUIRE(v.code == 0);
  const std::string path = temp_file("veronese.json", v.out);
  CHECK(run({"height", path, "--format", "symbolic"}).out == "28*log(2) + 12*log(3)\n");
  Run s = run({"compose", "image", kData + "/line.json", "--map", kData + "/segre_map.json"});
  REQUIRE(s.code == 0);
  const std::string spath = temp_file("segre.json", s.out);
  CHECK(run({"height", spath, "--format", "symbolic"}).out == "6*log(2) + 6*log(3)\n");
  Run j = run({"compose", "join", kData + "/cubic.json", kData + "/plane_curve.json"});
  REQUIRE(j.code == 0);
  CHECK(pair_from_json(nlohmann::json::parse(j.out)).size() == 7);
  Run g = run({"compose", "segre", kData + "/cubic.json", kData + "/plane_curve.json"});
  CHECK(pair_from_json(nlohmann::json::parse(g.out)).size() == 12);
}

TEST_CASE("plots are deterministic") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "toric_plot_a.svg").string();
  const std::string b = (dir / "toric_plot_b.svg").string();
  CHECK(run({"plot", kData + "/cubic.json", "--out", a}).code == 0);
  CHECK(run({"plot", kData + "/cubic.json", "--out", b}).code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string svg = slurp(a);
  CHECK(svg == slurp(b));
  CHECK(svg.find("stroke-width=\"3\"") != std::string::npos);
  CHECK(svg.find("2*log(2)") != std::string::npos);
  Run j = run({"plot", kData + "/chow_example.json", "--out", a, "--format", "json"});
  auto roof = nlohmann::json::parse(j.out);
  CHECK(roof["cells"].size() == 4);
  CHECK(roof["integral"] == "-1");
  const std::string cube = temp_file(
      "cube.json", R"({"exponents": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]], "coefficients": [1,2,3,5]})");
  CHECK(run({"plot", cube, "--out", a}).code == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"height", "/nonexistent/file.json"}).code == 2);
  const std::string bad = temp_file("bad.json", "{\"exponents\": [[0], [1]");
  Run r = run({"height", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line") != std::string::npos);
  const std::string zero = temp_file("zero.json", R"({"exponents": [[0],[1]], "coefficients": ["1","0"]})");
  CHECK(run({"height", zero}).code == 2);
  const std::string field = temp_file("field.json", R"({"exponents": [[0],["x"]], "coefficients": [1,1]})");
  Run f = run({"height", field});
  CHECK(f.code == 2);
  CHECK(f.err.find("exponents[1][0]") != std::string::npos);
  const std::string lattice = temp_file("lattice.json", R"({"exponents": [[0],[2]], "weights": [0, 1]})");
  CHECK(run({"chow-weight", lattice}).code == 3);
  CHECK(run({"hilbert", kData + "/chow_example.json", "--degree", "30", "--cap", "10"}).code == 4);
  setenv("TORIC_HEIGHT_CAP", "10", 1);
  CHECK(run({"hnorm", kData + "/cubic.json", "--degree", "30"}).code == 4);
  unsetenv("TORIC_HEIGHT_CAP");
  CHECK(run({"hnorm", kData + "/cubic.json", "--degree", "3"}).code == 0);
  CHECK(run({"height", kData + "/cubic.json", "--format", "yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
