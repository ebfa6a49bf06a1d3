#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = uset::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFive = std::string(USET_DATA_DIR) + "/qi_5_optimal.json";

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "uset_cli_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("factorial") {
    const auto r = run({"factorial", "--field", "Q", "--n", "6"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["result"]["factorial"]["norm"] == "720");
    CHECK(j["config"]["subcommand"] == "factorial");
    CHECK(j["config"]["n"] == "6");
  }

  TEST_CASE("check the five-point set") {
    const auto r = run({"check", "--field", "Q(i)", "--set", kFive, "--optimal"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["result"]["verdict"] == true);
    CHECK(j["result"]["volume_norm"] == "40960000");

    const auto u = run({"check", "--field", "Q(i)", "--set", kFive});
    CHECK(u.code == 0);
    CHECK(Json::parse(u.out)["config"]["n"] == "5");
  }

  TEST_CASE("false verdicts exit with 1") {
    const auto path = temp_file("even.json", R"([{"a": 0}, {"a": 2}, {"a": 4}])");
    const auto r = run({"check", "--field", "Q", "--set", path, "--n", "2"});
    CHECK(r.code == 1);
    CHECK(Json::parse(r.out)["result"]["verdict"] == false);
    const auto s = run({"search-optimal", "--field", "Q(i)", "--n", "4", "--box", "7x7"});
    CHECK(s.code == 1);
    CHECK(Json::parse(s.out)["result"]["sets"].empty());
    std::remove(path.c_str());
  }

  TEST_CASE("search finds sets for n = 5") {
    const auto r = run({"search-optimal", "--field", "Q(i)", "--n", "5", "--box", "4x3"});
    CHECK(r.code == 0);
    CHECK_FALSE(Json::parse(r.out)["result"]["sets"].empty());
  }

  TEST_CASE("usage and input errors exit with 2") {
    CHECK(run({"factorial", "--field", "Q"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"factorial", "--field", "Q(sqrt 4)", "--n", "3"}).code == 2);
    CHECK(run({"simulate", "--field", "Q(i)", "--n", "2", "--L", "5"}).code == 2);

    const auto bad = temp_file("bad.json", "[{\"a\": 1},\n {\"a\": }]");
    const auto r = run({"check", "--field", "Q", "--set", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    const auto elem = temp_file("elem.json", R"([{"a": 1}, {"a": "x"}])");
    const auto e = run({"check", "--field", "Q", "--set", elem});
    CHECK(e.code == 2);
    CHECK(e.err.find("element 1") != std::string::npos);
    CHECK(run({"check", "--field", "Q", "--set", "/nonexistent/set.json"}).code == 2);
    std::remove(bad.c_str());
    std::remove(elem.c_str());
  }

  TEST_CASE("Newton sequences report elements and length") {
    const auto path = temp_file("square.json", R"([{"a":0,"b":0},{"a":1,"b":0},{"a":0,"b":1},{"a":1,"b":1}])");
    const auto r = run({"check", "--field", "Q(i)", "--set", path, "--newton"});
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out)["result"];
    CHECK(j["newton_sequence"] == true);
    CHECK(j["newton_elements"] == 4);
    CHECK(j["newton_length"] == 3);
    std::remove(path.c_str());
  }

  TEST_CASE("budget exhaustion exits with 3") {
    CHECK(run({"search-optimal", "--field", "Q(i)", "--n", "4", "--budget", "5"}).code == 3);
  }

  TEST_CASE("help exits with 0") { CHECK(run({"--help"}).code == 0); }

  TEST_CASE("simulation output does not depend on threads") {
    const std::vector<std::string> base = {"simulate", "--field", "Q(i)", "--n", "1", "--L", "5",
                                           "--M", "40", "--trials", "300"};
    auto one = base, three = base;
    one.insert(one.end(), {"--threads", "1"});
    three.insert(three.end(), {"--threads", "3"});
    const auto a = run(one), b = run(three);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["config"].contains("threads") == false);
  }

  TEST_CASE("sweep emits CSV") {
    const auto r = run({"simulate", "--field", "Q(i)", "--n", "1", "--L", "5", "--trials", "50",
                        "--sweep-M", "10,20,40"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# config {", 0) == 0);
    std::getline(in, line);
    CHECK(line == "M,p_hat,ci_low,ci_high");
    int rows = 0;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 3);
  }

  TEST_CASE("out writes a file") {
    const std::string path = "uset_cli_test_out.json";
    const auto r = run({"factorial", "--field", "Q(i)", "--n", "5", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(Json::parse(in)["result"]["factorial"]["norm"] == "200");
    std::remove(path.c_str());
  }

  TEST_CASE("construct and potential") {
    const auto c = run({"construct", "--field", "Q(sqrt -5)", "--n", "4", "--trace"});
    CHECK(c.code == 0);
    CHECK(Json::parse(c.out)["result"]["trace"]["chain"].size() == 5);
    const auto p = run({"potential", "--boxes", "0:1", "--samples", "20000"});
    CHECK(p.code == 0);
    CHECK(Json::parse(p.out)["result"].is_object());
  }
}
