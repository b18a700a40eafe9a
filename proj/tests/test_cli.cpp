#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SWITCHOVER_CLI) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("usage errors write nothing") {
  TempDir d("switchover_cli_usage");
  CHECK(run("landscape --theta-deg 95 --out " + d.path.string()) == 2);
  CHECK(!fs::exists(d.path));
  CHECK(run("bogus --out " + d.path.string()) == 2);
  CHECK(run("spectrum --intensity-wcm2 4e14 --intensity-au 0.01 --out " + d.path.string()) == 2);
  CHECK(run("spectrum --wavelength-nm 800 --omega-au 0.057 --out " + d.path.string()) == 2);
  CHECK(run("spectrum --exclude-orbit Q --out " + d.path.string()) == 2);
  CHECK(run("spectrum --orders 2,2 --out " + d.path.string()) == 2);
  CHECK(run("spectrum --p-min 1 --p-max -1 --out " + d.path.string()) == 2);
  CHECK(!fs::exists(d.path));
  CHECK(run("--help") == 0);
}

TEST_CASE("switchover: single angle, metadata header, json") {
  TempDir d("switchover_cli_sw");
  REQUIRE(run("switchover --theta-list 8 --out " + d.path.string()) == 0);
  const std::string csv = slurp(d.path / "switchover.csv");
  CHECK(csv.rfind("# table: switchover\n", 0) == 0);
  CHECK(csv.find("# wavelength_nm: ") != std::string::npos);
  CHECK(csv.find("theta_star") == std::string::npos);
  std::istringstream in(csv);
  std::string line;
  int data = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++data;
  CHECK(data == 2);  // header + one row
  CHECK(csv.find(",AD,") != std::string::npos);

  REQUIRE(run("switchover --theta-list 45 --format json --out " + d.path.string()) == 0);
  const std::string js = slurp(d.path / "switchover.json");
  CHECK(js.find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("landscape and ω–3ω spectrum") {
  TempDir d("switchover_cli_land");
  REQUIRE(run("landscape --theta-deg 8 --grid-res 16 --out " + d.path.string()) == 0);
  CHECK(slurp(d.path / "contour.csv").find("# contributing: AD\n") != std::string::npos);
  CHECK(fs::exists(d.path / "landscape.csv"));
  CHECK(fs::exists(d.path / "saddles.csv"));
  REQUIRE(run("spectrum --orders 1,3 --exclude-orbit D --p-min -0.2 --p-max 0.2 --p-count 5 --out " +
              d.path.string()) == 0);
  CHECK(slurp(d.path / "spectrum.csv").find("# orders: 1,3\n") != std::string::npos);
  CHECK(slurp(d.path / "spectrum.csv").find("# exclude: D\n") != std::string::npos);
}

TEST_CASE("numerical failure gives exit 3 and a diagnostic") {
  // a near-zero field puts every saddle far above the search cap
  TempDir d("switchover_cli_fail");
  CHECK(run("switchover --intensity-wcm2 1 --theta-list 10,20 --out " + d.path.string()) == 3);
  CHECK(fs::exists(d.path / "diagnostic.txt"));
}
