#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lladic/certificate.hpp"

using namespace lladic;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("lladic_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run(const std::string& args) {
  std::string cmd = std::string(LLADIC_CLI_PATH) + " " + args + " > " + (workdir() / "stdout.txt").string() + " 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string out(const std::string& name) { return (workdir() / name).string(); }

json load(const std::string& name) {
  std::ifstream f(out(name));
  return json::parse(f);
}

void save(const std::string& name, const json& j) {
  std::ofstream f(out(name));
  f << j.dump(2);
}

}  // namespace

TEST_CASE("obstruction certificate for the quaternion module at ell = 5") {
  REQUIRE(run("sharpness verify --kind thm62 --prime 5 --p 2 --out " + out("thm62.json")) == 0);
  json c = load("thm62.json");
  CHECK(c["schema_version"] == kSchemaVersion);
  CHECK(c["claim"] == "pairing-obstruction");
  CHECK(c["verified"] == true);
  CHECK(c["precision"].is_string());
  const json& cells = c["result"]["cells"];
  CHECK(cells.size() >= 8);
  for (const auto& cell : cells) CHECK(cell["perfect"] == false);
  bool control_perfect = false;
  for (const auto& cell : c["result"]["control"]["cells"]) control_perfect = control_perfect || cell["perfect"] == true;
  CHECK(control_perfect);
  CHECK(run("check certificate " + out("thm62.json")) == 0);
}

TEST_CASE("pairing construct gives a unimodular alternating plane") {
  REQUIRE(run("pairing construct --group Q2 --prime 5 --out " + out("q2.json")) == 0);
  json c = load("q2.json");
  RingRef z5 = Ring::base(5);
  BilinearForm f = form_from_json(z5, c["result"]["form"]);
  Lattice t = lattice_from_json(z5, c["result"]["lattice"]);
  CHECK(f.dim() == 2);
  CHECK(f.check_symmetry());
  // gram_on(t, f) = u^T J u * c for a unit c: its determinant is a unit
  GramOnLattice g = gram_on(t, f);
  Elem det = g.gram(0, 0) * g.gram(1, 1) - g.gram(0, 1) * g.gram(1, 0);
  CHECK(det.val() == 2 * g.denom);
  CHECK(run("check certificate " + out("q2.json")) == 0);
  CHECK(run("pairing construct --group mu11xC2 --prime 11 --out " + out("l37.json")) == 0);
  CHECK(run("check certificate " + out("l37.json")) == 0);
}

TEST_CASE("abvar reports d and the divisibility claim") {
  REQUIRE(run("abvar --p 2 --prime 5 --b 0 --out " + out("abvar.json")) == 0);
  json c = load("abvar.json");
  CHECK(c["claim"] == "polarization-degree");
  CHECK(c["setting"]["statement"] == "every polarization degree divisible by 5");
  CHECK(c["result"]["d"] == "4");
  CHECK(run("check certificate " + out("abvar.json")) == 0);
}

TEST_CASE("round trip for every claim") {
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"stabilize --prime 5", "stab.json"},
      {"reduce --prime 5", "red.json"},
      {"sharpness verify --kind prop61 --prime 5", "p61.json"},
      {"sharpness verify --kind cor64 --prime 5 --b 1", "c64.json"},
      {"sharpness verify --kind thm66 --prime 5", "t66.json"},
      {"sharpness verify --kind thm65 --prime 5", "t65.json"},
  };
  for (const auto& [args, file] : cmds) {
    CAPTURE(args);
    REQUIRE(run(args + " --out " + out(file)) == 0);
    CHECK(load(file)["verified"] == true);
    CHECK(run("check certificate " + out(file)) == 0);
  }
}

TEST_CASE("tampered certificates are refuted") {
  REQUIRE(run("sharpness verify --kind prop61 --prime 5 --out " + out("base.json")) == 0);
  json c = load("base.json");
  json a = c;
  a["result"]["cells"][1]["gram"]["entries"][0][0][0] = "3";
  save("bad1.json", a);
  CHECK(run("check certificate " + out("bad1.json")) == 2);
  json b = c;
  b["result"]["cells"][1]["exponents"][0] = "1";
  save("bad2.json", b);
  CHECK(run("check certificate " + out("bad2.json")) == 2);
  json d = c;
  d["result"]["form"]["gram"]["entries"][0][1][0] = "2";
  save("bad3.json", d);
  CHECK(run("check certificate " + out("bad3.json")) == 2);
  json e = c;
  e["schema_version"] = "0";
  save("bad4.json", e);
  CHECK(run("check certificate " + out("bad4.json")) == 2);
}

TEST_CASE("exit codes") {
  CHECK(run("") == 64);
  CHECK(run("frobnicate") == 64);
  CHECK(run("sharpness verify --kind nonsense") == 64);
  CHECK(run("sharpness verify") == 64);
  CHECK(run("check certificate " + out("does-not-exist.json")) == 64);
  CHECK(run("abvar --p 5 --prime 7") == 3);
  CHECK(run("abvar --p 2 --prime 2") == 3);
  CHECK(run("sharpness verify --kind thm62 --prime 5 --precision 3") == 4);
  CHECK(run("ring info --ring Z5/real/cyc") == 0);
}

TEST_CASE("identical flags give identical certificates apart from timing") {
  REQUIRE(run("abvar --p 3 --prime 5 --out " + out("d1.json")) == 0);
  REQUIRE(run("abvar --p 3 --prime 5 --out " + out("d2.json")) == 0);
  json a = load("d1.json"), b = load("d2.json");
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a.dump() == b.dump());
  CHECK(a["result"]["d"] == "4");
}
