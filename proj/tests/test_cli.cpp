#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "srvf/io.hpp"
#include "srvf/srvf.hpp"

using namespace srvf;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "srvf_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// run the binary with the working directory set to work_dir()
RunResult run(const std::string& args, const std::string& env = {}) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  std::string cmd = "cd " + work_dir().string() + " && " + env +
                    (env.empty() ? "" : " ") + SRVF_CLI_PATH + " " + args +
                    " > " + out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_line(const fs::path& p, std::size_t dim, bool second_axis) {
  Curve c = second_axis ? Curve::uniform(dim, {0, 0, 0, 1})
                        : Curve::uniform(dim, {0, 0, 1, 0});
  write_curve_csv(c, p.string());
}

}  // namespace

TEST_CASE("cli param distance prints the fixed-point value") {
  write_line(work_dir() / "e1.csv", 2, false);
  write_line(work_dir() / "e2.csv", 2, true);
  auto r = run("distance e1.csv e2.csv");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "1.414213562373\n");
}

TEST_CASE("cli transform round trip") {
  {
    Curve c(2, {0.0, 0.25, 0.625, 1.0}, {0, 0, 0.5, 0.25, 0.5, 1.0, 1.5, 1.0});
    write_curve_csv(c, (work_dir() / "in.csv").string());
  }
  auto r1 = run("transform in.csv --out q.csv");
  REQUIRE(r1.code == 0);
  REQUIRE(r1.out == "wrote q.csv\n");
  auto r2 = run("transform q.csv --inverse --out back.csv");
  REQUIRE(r2.code == 0);
  Curve orig = read_curve_csv((work_dir() / "in.csv").string());
  Curve back = read_curve_csv((work_dir() / "back.csv").string());
  REQUIRE(back.knots() == orig.knots());
  for (std::size_t i = 0; i < back.samples().size(); ++i)
    REQUIRE(back.samples()[i] ==
            Catch::Approx(orig.samples()[i]).margin(1e-12));

  // json format goes through the json reader and writer
  auto r3 = run("--format json transform in.csv --out q.json");
  REQUIRE(r3.code == 0);
  auto r4 = run("--format json transform q.json --inverse --out back.json");
  REQUIRE(r4.code == 0);
  Curve jback = read_curve_json((work_dir() / "back.json").string());
  for (std::size_t i = 0; i < jback.samples().size(); ++i)
    REQUIRE(jback.samples()[i] ==
            Catch::Approx(orig.samples()[i]).margin(1e-12));
}

TEST_CASE("cli quotient distance writes alignments and is deterministic") {
  write_line(work_dir() / "e1.csv", 2, false);
  // same segment, but warped: quotient distance collapses to (almost) zero
  Curve warped(2, {0.0, 0.5, 1.0}, {0, 0, 0.75, 0, 1, 0});
  write_curve_csv(warped, (work_dir() / "e1w.csv").string());

  auto r = run("--grid-n 64 distance e1.csv e1w.csv --mode quotient "
               "--alignment-out align");
  REQUIRE(r.code == 0);
  REQUIRE(std::stod(r.out) <= 1e-6);
  REQUIRE(fs::exists(work_dir() / "align.json"));
  REQUIRE(fs::exists(work_dir() / "align.csv"));

  nlohmann::json j;
  std::ifstream(work_dir() / "align.json") >> j;
  REQUIRE(j["grid_n"].get<std::size_t>() == 64);
  REQUIRE(j["move_set"].size() == 13);  // axis pair plus coprime steps, radius 4

  auto r2 = run("--grid-n 64 distance e1.csv e1w.csv --mode quotient "
                "--alignment-out align2");
  REQUIRE(r2.out == r.out);
  REQUIRE(slurp(work_dir() / "align2.json") == slurp(work_dir() / "align.json"));

  // dp options flow through to the alignment
  auto r3 = run("--grid-n 64 --dp-radius 2 --no-axis-moves distance e1.csv "
                "e1w.csv --mode quotient --alignment-out align3");
  REQUIRE(r3.code == 0);
  nlohmann::json j3;
  std::ifstream(work_dir() / "align3.json") >> j3;
  REQUIRE(j3["move_set"].size() == 3);  // (1,1), (1,2), (2,1)
}

TEST_CASE("cli geodesic writes steps and a distance table") {
  write_line(work_dir() / "e1.csv", 2, false);
  write_line(work_dir() / "e2.csv", 2, true);
  auto r = run("geodesic e1.csv e2.csv --steps 4 --out-prefix geo");
  REQUIRE(r.code == 0);
  for (int k = 0; k <= 4; ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "geo_%03d.csv", k);
    REQUIRE(fs::exists(work_dir() / name));
  }
  const std::string table = slurp(work_dir() / "geo_distances.csv");
  REQUIRE(table.rfind("step,s,dist_from_b,dist_to_c\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : table)
    if (ch == '\n') ++rows;
  REQUIRE(rows == 6);

  // the sampled midpoint sits halfway in the parametrised metric
  Curve mid = read_curve_csv((work_dir() / "geo_002.csv").string());
  Curve b = read_curve_csv((work_dir() / "e1.csv").string());
  const double total = std::sqrt(2.0);
  REQUIRE(dist_param(b, mid) == Catch::Approx(total / 2).margin(1e-10));
}

TEST_CASE("cli counterexample runs at desk scale") {
  auto r = run("counterexample --level 3 --grid-list 32,64 --kprime-list 1,2 "
               "--out-prefix ce");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("dist_sq = 27/16") != std::string::npos);
  REQUIRE(r.out.find("N=32:") != std::string::npos);
  REQUIRE(r.out.find("N=64:") != std::string::npos);
  REQUIRE(r.out.find("k'=1:") != std::string::npos);
  for (const char* suffix : {"_report.json", "_report.csv", "_plot.csv",
                             "_p.csv", "_q.csv", "_b.csv", "_c.csv",
                             "_cantor.json"})
    REQUIRE(fs::exists(work_dir() / (std::string("ce") + suffix)));

  nlohmann::json j;
  std::ifstream(work_dir() / "ce_report.json") >> j;
  REQUIRE(j["dist_sq_exact"].get<std::string>() == "27/16");
  REQUIRE(j["rows"].size() == 4);

  // the written pair parses back as SRVFs on a shared partition
  Srvf p = read_srvf_csv((work_dir() / "ce_p.csv").string());
  Srvf q = read_srvf_csv((work_dir() / "ce_q.csv").string());
  REQUIRE(p.knots() == q.knots());

  // epsilon outside the admissible window is a configuration error
  auto bad = run("counterexample --level 2 --epsilon 0.2 --grid-list 16");
  REQUIRE(bad.code == 3);
  REQUIRE(bad.err.find("epsilon") != std::string::npos);
}

TEST_CASE("cli matrix consumes a corpus") {
  const auto dir = work_dir();
  write_line(dir / "mx_a.csv", 2, false);
  write_line(dir / "mx_b.csv", 2, true);
  Curve zero = Curve::uniform(2, {0, 0, 0, 0});
  write_curve_csv(zero, (dir / "mx_z.csv").string());

  nlohmann::json corpus = nlohmann::json::array();
  corpus.push_back({{"id", "a"}, {"file", "mx_a.csv"}});
  corpus.push_back({{"id", "b"}, {"file", "mx_b.csv"}});
  corpus.push_back({{"id", "z"}, {"file", "mx_z.csv"}});
  std::ofstream(dir / "corpus.json") << corpus.dump();

  auto r = run("--grid-n 16 matrix corpus.json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("id,a,b,z\n", 0) == 0);
  REQUIRE(r.err.find("zero-length") != std::string::npos);
  REQUIRE(r.err.find("z") != std::string::npos);

  auto r2 = run("--grid-n 16 matrix corpus.json --out mx.csv");
  REQUIRE(r2.code == 0);
  REQUIRE(fs::exists(dir / "mx.csv"));
  const std::string written = slurp(dir / "mx.csv");
  REQUIRE(written == r.out);  // same bytes either way
}

TEST_CASE("cli canonical emits representative and warp") {
  Curve burst(1, {0.0, 0.5, 1.0}, {0.0, 0.9, 1.0});
  write_curve_csv(burst, (work_dir() / "burst.csv").string());
  auto r = run("canonical burst.csv --out rep.csv --warp-out warp.csv");
  REQUIRE(r.code == 0);
  Curve rep = read_curve_csv((work_dir() / "rep.csv").string());
  Warp warp = read_warp_csv((work_dir() / "warp.csv").string());
  Curve back = compose(rep, warp);
  REQUIRE(back.samples() == burst.samples());
}

TEST_CASE("cli probe prints the quotient table") {
  Curve c(2, {0.0, 0.5, 1.0}, {0, 0, 0, 0, 1, 0});
  Curve h(2, {0.0, 0.25, 0.5, 1.0}, {0, 0, 0, 1, 0, 0, 0, 0});
  write_curve_csv(c, (work_dir() / "probe_c.csv").string());
  write_curve_csv(h, (work_dir() / "probe_h.csv").string());
  auto r = run("probe probe_c.csv probe_h.csv --eps-list 1e-2,2.5e-3");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  REQUIRE(header == "eps,value");
  const double v1 = std::stod(row1.substr(row1.find(',') + 1));
  const double v2 = std::stod(row2.substr(row2.find(',') + 1));
  REQUIRE(v2 / v1 == Catch::Approx(2.0).margin(1e-9));

  // overlapping support is a numeric-domain error
  write_curve_csv(Curve::uniform(2, {0, 0, 1, 1}), (work_dir() / "probe_bad.csv").string());
  auto bad = run("probe probe_c.csv probe_bad.csv");
  REQUIRE(bad.code == 3);
}

TEST_CASE("cli exit codes") {
  auto missing = run("distance nope.csv nada.csv");
  REQUIRE(missing.code == 2);
  REQUIRE(missing.err.find("nope.csv") != std::string::npos);

  auto badflag = run("--format xml transform x.csv");
  REQUIRE(badflag.code == 3);

  auto nosub = run("");
  REQUIRE(nosub.code == 3);

  auto help = run("--help");
  REQUIRE(help.code == 0);
  REQUIRE(help.out.find("transform") != std::string::npos);

  std::ofstream(work_dir() / "garbled.csv") << "t,x1\n0,0\n0.5,NOPE\n1,1\n";
  auto garbled = run("transform garbled.csv");
  REQUIRE(garbled.code == 2);
  REQUIRE(garbled.err.find(":3:") != std::string::npos);
}

TEST_CASE("cli config file and environment") {
  write_line(work_dir() / "e1.csv", 2, false);
  write_line(work_dir() / "e2.csv", 2, true);
  std::ofstream(work_dir() / "settings.ini") << "grid-n=32\n";

  auto r = run("--config settings.ini distance e1.csv e2.csv --mode quotient "
               "--alignment-out cfg_align");
  REQUIRE(r.code == 0);
  nlohmann::json j;
  std::ifstream(work_dir() / "cfg_align.json") >> j;
  REQUIRE(j["grid_n"].get<std::size_t>() == 32);

  // explicit flags beat the config file
  auto r2 = run("--config settings.ini --grid-n 8 distance e1.csv e2.csv "
                "--mode quotient --alignment-out cfg_align2");
  REQUIRE(r2.code == 0);
  nlohmann::json j2;
  std::ifstream(work_dir() / "cfg_align2.json") >> j2;
  REQUIRE(j2["grid_n"].get<std::size_t>() == 8);

  // the config can come from the environment as well
  auto r3 = run("distance e1.csv e2.csv --mode quotient --alignment-out cfg_align3",
                "SRVF_CONFIG=settings.ini");
  REQUIRE(r3.code == 0);
  nlohmann::json j3;
  std::ifstream(work_dir() / "cfg_align3.json") >> j3;
  REQUIRE(j3["grid_n"].get<std::size_t>() == 32);

  auto broken = run("--config does_not_exist.ini distance e1.csv e2.csv");
  REQUIRE(broken.code == 3);
}
