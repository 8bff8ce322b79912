#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "mqg/cli.hpp"
#include "mqg/hennings.hpp"

using namespace mqg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  [[nodiscard]] nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mqg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("mqg_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string surgery_text(const SurgeryPresentation& sp) {
  std::string text = sp.diagram.to_text();
  for (const auto& [c, f] : sp.framing_override) text += "framing " + std::to_string(c) + " " + std::to_string(f) + "\n";
  return text;
}

}  // namespace

TEST_CASE("verify passes on S3 and reports every suite") {
  const auto r = run({"verify", "--group", "builtin", "S3", "--suite", "structure,double,traces"});
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["schema"] == 1);
  CHECK(j["passed"] == true);
  CHECK(j["suites"].size() == 4);  // group axioms first
  for (const auto& s : j["suites"])
    for (const auto& c : s["checks"]) CHECK_MESSAGE(c["passed"] == true, c["name"]);
}

TEST_CASE("a corrupted group table fails the axioms with a witness") {
  const auto path = temp_file("bad.grp", "group table bad\ne a b\ne a b\na e a\nb b e\n");
  const auto r = run({"verify", "--group", path});
  CHECK(r.code == kExitCheckFailed);
  const auto check = r.json()["suites"][0]["checks"][0];
  CHECK(check["name"] == "group_axioms");
  CHECK(check["passed"] == false);
  CHECK(check["witness"].get<std::string>().find(',') != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run({"verify", "--group", "builtin", "Z", "--suite", "repcat"}).code == kExitConfig);
  CHECK(run({"verify", "--group", "builtin", "Q8"}).code == kExitConfig);
  CHECK(run({"verify", "--group", "builtin", "S3", "--suite", "nope"}).code == kExitConfig);
  CHECK(run({"verify", "--bogus"}).code == kExitConfig);
  const auto missing = run({"invariant", "--group", "builtin", "C2", "--z", "cointegral", "--diagram", "/no/such/file"});
  CHECK(missing.code == kExitConfig);
  CHECK(missing.err.find("/no/such/file") != std::string::npos);
  // Neither or both z specifications.
  CHECK(run({"invariant", "--group", "builtin", "C2", "--diagram", "builtin:hopf"}).code == kExitConfig);
  CHECK(run({"invariant", "--group", "builtin", "C2", "--z", "cointegral", "--sigma", "H=;K=", "--diagram",
             "builtin:hopf"})
            .code == kExitConfig);
}

TEST_CASE("invariant of the unknot on D(C2) with the cointegral") {
  const auto r = run({"invariant", "--group", "builtin", "C2", "--z", "cointegral", "--diagram", "builtin:unknot[0]"});
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["value"] == "1/1");
  CHECK(j["psi_zv"] == "1/1");
  CHECK(j["psi_zv_inverse"] == "1/1");
}

TEST_CASE("sigma failing closure is rejected before evaluation") {
  const auto r = run({"invariant", "--group", "builtin", "S3", "--sigma", "H=(1 2 3);K=(1 2)", "--diagram",
                      "builtin:hopf"});
  CHECK(r.code == kExitConfig);
  CHECK(r.out.empty());
  CHECK(r.err.find("sigma_involution_closed") != std::string::npos);
}

TEST_CASE("manifold values") {
  const auto empty = temp_file("empty.srg", "");
  auto r = run({"manifold", "--group", "builtin", "C3", "--z", "cointegral", "--surgery", empty});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["manifold"]["normalized"] == "1/1");

  r = run({"manifold", "--group", "builtin", "C3", "--sigma", "H=;K=1", "--surgery", "builtin:L(3,1)"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["manifold"]["normalized"] == "3/1");
  CHECK(r.json()["manifold"]["n_plus"] == 1);

  r = run({"manifold", "--group", "builtin", "C3", "--z", "cointegral", "--surgery", "builtin:L(3,1)"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["manifold"]["normalized"] == "1/1");
}

TEST_CASE("Fenn-Rourke pair check mode") {
  for (const auto& pair : builtin_move_pairs()) {
    if (pair.kind != MoveKind::FennRourke) continue;
    const auto a = temp_file("left.srg", surgery_text(pair.left));
    const auto b = temp_file("right.srg", surgery_text(pair.right));
    const auto r = run({"manifold", "--group", "builtin", "S3", "--sigma", "H=(1 2 3);K=(1 2 3)", "--surgery", a,
                        "--pair", b});
    CHECK_MESSAGE(r.code == kExitOk, pair.name);
    CHECK_MESSAGE(r.json()["equal"] == true, pair.name);
  }
  const auto r = run({"manifold", "--group", "builtin", "C3", "--sigma", "H=;K=1", "--surgery", "builtin:L(2,1)",
                      "--pair", "builtin:L(3,1)"});
  CHECK(r.code == kExitCheckFailed);
  CHECK(r.json()["equal"] == false);
}

TEST_CASE("evaluation errors exit with code 3") {
  // z = 0 passes every z-condition but ψ(zv) = 0.
  const auto r = run({"manifold", "--group", "builtin", "C3", "--z", "0", "--surgery", "builtin:unknot[+1]"});
  CHECK(r.code == kExitEvaluation);
  CHECK(r.json()["error"]["kind"] == "NotNormalizable");
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  const std::vector<std::string> args = {"verify", "--group", "builtin", "Dinf", "--radius", "1", "--sigma",
                                         "H=;K=e"};
  const auto a = run(args);
  auto with_jobs = args;
  with_jobs.insert(with_jobs.end(), {"--jobs", "3"});
  const auto b = run(with_jobs);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(a.out.find("0.") == std::string::npos);  // no floats anywhere
}

TEST_CASE("shipped data files") {
  const std::string data = MQG_DATA_DIR;
  auto r = run({"verify", "--group", data + "/groups/s3.grp", "--suite", "structure"});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["order"] == 6);
  CHECK(run({"verify", "--group", data + "/groups/v4.grp", "--suite", "structure"}).code == kExitOk);
  CHECK(run({"verify", "--group", data + "/groups/corrupted.grp"}).code == kExitCheckFailed);

  const std::vector<std::string> z = {"--group", "builtin", "S3", "--sigma", "H=;K=(1 2 3),(1 2)"};
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
    head.insert(head.end(), z.begin(), z.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return run(head);
  };
  const auto file = with({"invariant"}, {"--diagram", data + "/diagrams/trefoil.mdg"});
  const auto builtin = with({"invariant"}, {"--diagram", "builtin:trefoil+"});
  REQUIRE(file.code == kExitOk);
  CHECK(file.json()["value"] == builtin.json()["value"]);
  // The Poincaré sphere has a perfect fundamental group: one homomorphism to S3.
  r = with({"manifold"}, {"--surgery", data + "/surgery/poincare.srg"});
  CHECK(r.json()["manifold"]["normalized"] == "1/1");
  r = with({"manifold"}, {"--surgery", data + "/surgery/lens-3-1.srg"});
  CHECK(r.json()["manifold"]["normalized"] == "3/1");
  r = with({"manifold"}, {"--surgery", data + "/surgery/empty.srg"});
  CHECK(r.json()["manifold"]["normalized"] == "1/1");
  r = with({"manifold"}, {"--surgery", data + "/surgery/chain.srg", "--pair", data + "/surgery/chain-blown-down.srg"});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["equal"] == true);
}
