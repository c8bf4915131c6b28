#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace ellipsolve::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kUsage);
  CHECK(run({"frobnicate"}).code == kUsage);
  CHECK(run({"catalog", "check", "--family", "F99"}).code == kUsage);
  CHECK(run({"verify", "--pde", "mbbm", "--solution", "u5", "--omega", "2", "--zeta", "1"}).code ==
        kUsage);
  CHECK(run({"verify", "--pde", "heat", "--solution", "u1"}).code == kUsage);
  CHECK(run({"--format", "xml", "catalog", "list"}).code == kUsage);
}

TEST_CASE("catalog") {
  const Run list = run({"catalog", "list"});
  CHECK(list.code == kPass);
  CHECK(list.out.find("F17") != std::string::npos);
  const Run one = run({"--format", "json", "catalog", "check", "--family", "F14"});
  CHECK(one.code == kPass);
  CHECK(nlohmann::json::parse(one.out).dump().find("\"pass\"") != std::string::npos);
  const auto pdes = nlohmann::json::parse(run({"catalog", "pdes"}).out);
  CHECK(pdes.size() == 3);
}

TEST_CASE("verify exit codes mirror the verdict") {
  const Run ok = run({"verify", "--pde", "mbbm", "--solution", "u5", "--omega", "2"});
  CHECK(ok.code == kPass);
  CHECK(nlohmann::json::parse(ok.out)["verdict"] == "pass");

  const Run cond = run({"verify", "--pde", "mbbm", "--solution", "u5", "--omega", "0.5"});
  CHECK(cond.code == kCondition);
  CHECK(cond.err.find("omega > 1") != std::string::npos);

  const Run forced =
      run({"verify", "--pde", "mbbm", "--solution", "u5", "--omega", "0.5", "--unchecked"});
  CHECK(forced.code == kFail);

  const Run printed = run({"verify", "--pde", "kdv_mkdv", "--solution", "u8", "--alpha", "1",
                           "--beta", "1", "--gamma", "1", "--printed"});
  CHECK(printed.code == kFail);
  const Run corrected = run({"verify", "--pde", "kdv_mkdv", "--solution", "u8", "--alpha", "1",
                             "--beta", "1", "--gamma", "1"});
  CHECK(corrected.code == kPass);

  const Run coarse = run({"--tol", "0.3", "verify", "--pde", "mbbm", "--solution", "u5", "--omega",
                          "2", "--hx", "0.4", "--ht", "0.4", "--nx", "33", "--nt", "4"});
  CHECK(coarse.code == kInconclusive);

  CHECK(run({"verify", "--pde", "mbbm", "--solution", "u5", "--omega", "2", "--nx", "1"}).code ==
        kDegenerateGrid);
}

TEST_CASE("eval") {
  const Run t = run({"--format", "csv", "eval", "--family", "F14", "--c0", "1", "--c2", "-2",
                     "--c4", "1", "--range", "-3:3:121"});
  REQUIRE(t.code == kPass);
  const auto l = lines(t.out);
  REQUIRE(l.size() == 123);
  CHECK(l[0].rfind("# family F14", 0) == 0);
  CHECK(l[1] == "xi,value");
  CHECK((l[62] == "0,0" || l[62] == "0,-0"));
  // F14 here is tanh(xi), written with 17 significant digits
  for (std::size_t i = 2; i < l.size(); ++i) {
    const auto comma = l[i].find(',');
    const double xi = std::stod(l[i].substr(0, comma));
    const std::string v = l[i].substr(comma + 1);
    CHECK(std::stod(v) == doctest::Approx(std::tanh(xi)).epsilon(1e-15));
  }
  CHECK(l[2] == "-3,-0.99505475368673046");

  CHECK(run({"eval", "--family", "F15", "--c0", "1", "--c2", "-2", "--c4", "1", "--range",
             "-1:1:11"})
            .code == kDegenerateGrid);
  CHECK(run({"eval", "--family", "F15", "--c0", "1", "--c2", "-2", "--c4", "1", "--range",
             "-1:1:11", "--skip-poles"})
            .code == kPass);
  CHECK(run({"eval", "--family", "F14", "--range", "1:0:5"}).code == kDegenerateGrid);
  CHECK(run({"eval", "--family", "F14", "--range", "0:1:1"}).code == kDegenerateGrid);
  CHECK(run({"eval", "--family", "F1", "--c2", "-1", "--c4", "1", "--range", "0:1:3"}).code ==
        kCondition);

  const Run field = run({"--format", "csv", "eval", "--pde", "nls", "--solution", "u1", "--alpha",
                         "1", "--beta", "2", "--omega", "2", "--c", "1", "--range", "-1:1:3"});
  REQUIRE(field.code == kPass);
  CHECK(lines(field.out)[1] == "x,t,re,im");
}

TEST_CASE("solve and errata") {
  const Run s = run({"--format", "json", "solve", "--pde", "nls", "--alpha", "1", "--beta", "2",
                     "--omega", "2", "--c", "1"});
  CHECK(s.code == kPass);
  CHECK(!nlohmann::json::parse(s.out).empty());
  CHECK(run({"solve", "--raw", "0,1,0,-1"}).code == kPass);
  CHECK(run({"solve", "--raw", "0,1"}).code == kUsage);

  const Run e = run({"--format", "json", "errata"});
  CHECK(e.code == kPass);
  CHECK(!nlohmann::json::parse(e.out).empty());
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& a :
       {std::vector<std::string>{"--format", "json", "catalog", "check"},
        std::vector<std::string>{"--format", "json", "errata", "--evidence"},
        std::vector<std::string>{"--format", "json", "solve", "--pde", "kdv_mkdv", "--alpha", "1",
                                 "--beta", "1", "--gamma", "-1"}}) {
    const Run x = run(a), y = run(a);
    CHECK(x.code == y.code);
    CHECK(x.out == y.out);
  }
  const Run s1 = run({"--seed", "1", "--format", "json", "catalog", "check", "--family", "F17"});
  const Run s2 = run({"--seed", "2", "--format", "json", "catalog", "check", "--family", "F17"});
  CHECK(s1.out != s2.out);
}
