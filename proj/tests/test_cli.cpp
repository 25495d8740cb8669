#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "knotgeo/cli.hpp"

using namespace knotgeo;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: invariants output") {
  const CliResult r = run({"invariants", "T(3,7)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sigma: -8, upsilon1: -4, arf: 0, det: 1") != std::string::npos);
  CHECK(r.out.find("delta: unavailable") != std::string::npos);
}

TEST_CASE("cli: gamma4 line for the delta family") {
  const CliResult r = run({"gamma4", "2*T(5,9) # -3*T(5,13)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("gamma4: 2 ≤ γ₄ ≤ 7") != std::string::npos);
}

TEST_CASE("cli: verify exit codes and counts") {
  const CliResult ok = run({"verify", "t2", "9"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("unknown points: 8") != std::string::npos);
  CHECK(ok.out.find("verified") != std::string::npos);

  const CliResult ray = run({"verify", "t3", "7"});
  CHECK(ray.code == 0);
  CHECK(ray.out.find("engine ray: start (-14,1)") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 1") {
  CHECK(run({"classify"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  const CliResult bad = run({"invariants", "T(2,4)"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error:", 0) == 0);
  CHECK(run({"verify", "t2", "8"}).code == 1);  // even n
  CHECK(run({"classify", "T(2,3)", "--box=4,-4,0"}).code == 1);
}

TEST_CASE("cli: registry errors exit 2") {
  const CliResult missing = run({"--registry", "/nonexistent.json", "invariants", "T(2,3)"});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("error:", 0) == 0);

  const std::string path = "cli_test_registry.json";
  {
    std::ofstream f(path);
    f << "{\"named\": [{\"name\":\"k\",\"sigma\":1,\"arf\":0,\"det\":1,\"g4_upper\":0}]}";
  }
  const CliResult bad = run({"--registry", path, "invariants", "T(2,3)"});
  CHECK(bad.code == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli: user registry extends the name set") {
  const std::string path = "cli_test_registry_ok.json";
  {
    std::ofstream f(path);
    f << R"({"named":[{"name":"6_1","sigma":0,"upsilon1":"1/2","arf":0,"det":9,
             "g4_upper":1}]})";
  }
  const CliResult r = run({"--registry", path, "invariants", "6_1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("upsilon1: 1/2") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli: determinism of classify and plot") {
  const CliResult a = run({"classify", "T(3,8)", "--box=-24,4,6"});
  const CliResult b = run({"classify", "T(3,8)", "--box=-24,4,6"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const CliResult s1 = run({"plot", "T(2,5)", "--format", "svg", "--box=-14,6,5"});
  const CliResult s2 = run({"plot", "T(2,5)", "--format", "svg", "--box=-14,6,5"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
  CHECK(s1.out.find("<svg") != std::string::npos);
}

TEST_CASE("cli: extrapolated upsilon gate") {
  const CliResult refused = run({"invariants", "T(6,7)"});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("allow-extrapolated-upsilon-base") != std::string::npos);
  const CliResult allowed =
      run({"--allow-extrapolated-upsilon-base", "invariants", "T(6,7)"});
  CHECK(allowed.code == 0);
  CHECK(allowed.out.find("extrapolated") != std::string::npos);
}

TEST_CASE("cli: no-mirror-delta flag") {
  const CliResult with = run({"classify", "-2*T(5,9) # 3*T(5,13)", "--box=-120,-80,6"});
  CHECK(with.code == 0);
  CHECK(with.out.find("\"delta_line\": null") == std::string::npos);
  const CliResult without =
      run({"--no-mirror-delta", "classify", "-2*T(5,9) # 3*T(5,13)", "--box=-120,-80,6"});
  CHECK(without.code == 0);
  CHECK(without.out.find("\"delta_line\": null") != std::string::npos);
}
