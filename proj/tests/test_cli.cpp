#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef KUGACERT_BIN
#error "KUGACERT_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr merged
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(KUGACERT_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains_line(const std::string& hay, const std::string& line) {
  std::string withnl = line + "\n";
  if (hay.rfind(line, 0) == 0 && hay.compare(0, withnl.size(), withnl) == 0)
    return true;
  return hay.find("\n" + withnl) != std::string::npos;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << body;
}

std::string tmp_path(const std::string& stem) {
  return "/tmp/kugacert_cli_" + std::to_string(::getpid()) + "_" + stem;
}

}  // namespace

TEST_CASE("version flag and run header") {
  auto v = run("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("kugacert 1.0.0") != std::string::npos);

  auto r = run("kodaira --g 2 --n 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("# kugacert 1.0.0\n", 0) == 0);
  CHECK(r.out.find("# params:") != std::string::npos);
  CHECK(r.out.find("command=kodaira") != std::string::npos);
  CHECK(r.out.find("g=2") != std::string::npos);
  CHECK(r.out.find("n=7") != std::string::npos);
}

TEST_CASE("kodaira subcommand, pinned lines") {
  auto r0 = run("kodaira --g 2 --n 7");
  CHECK(r0.exit_code == 0);
  CHECK(contains_line(r0.out, "kappa = 0"));

  auto r1 = run("kodaira --g 1 --n 3");
  CHECK(r1.exit_code == 0);
  CHECK(contains_line(r1.out, "kappa = -infinity (fibres rational)"));

  auto r2 = run("kodaira --g 6 --n 1");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("general type") != std::string::npos);
  CHECK(r2.out.find("550/73") != std::string::npos);

  auto rt = run("kodaira --table 6 12");
  CHECK(rt.exit_code == 0);
  CHECK(rt.out.find("GT(21)") != std::string::npos);
  CHECK(rt.out.find("-inf") != std::string::npos);

  auto rj = run("--json kodaira --table 6 12");
  CHECK(rj.exit_code == 0);
  auto j = nlohmann::json::parse(rj.out);
  CHECK(j.at("table").at("g_max") == 6);
  CHECK(j.at("table").at("n_max") == 12);
  CHECK(j.at("table").at("verdicts").size() == 6);

  CHECK(run("kodaira --g 2 --n 0").exit_code == 3);  // undecidable slice
  CHECK(run("kodaira --g 2").exit_code == 2);
  CHECK(run("kodaira --bogus").exit_code == 2);
}

TEST_CASE("certify subcommand and certificate schema") {
  auto ok = run("--json certify --g 2 --n 4");
  CHECK(ok.exit_code == 0);
  auto j = nlohmann::json::parse(ok.out);
  for (const char* key :
       {"g", "n", "pass", "interior", "scan", "fan_checks", "version", "params"})
    CHECK(j.contains(key));
  CHECK(j.at("pass") == true);
  CHECK(j.at("g") == 2);
  CHECK(j.at("version") == "1.0.0");
  CHECK(j.at("scan").is_array());
  CHECK(j.at("interior") == "canonical_no_quasireflections");

  SECTION("byte stability across runs") {
    auto again = run("--json certify --g 2 --n 4");
    CHECK(again.out == ok.out);
  }

  SECTION("failing slice carries a witness and exits 1") {
    auto bad = run("--json certify --g 2 --n 3");
    CHECK(bad.exit_code == 1);
    auto jb = nlohmann::json::parse(bad.out);
    CHECK(jb.at("pass") == false);
    bool found = false;  // witness entries carry "order"; scan rows do not
    for (const auto& w : jb.at("scan"))
      if (w.contains("order") && w.at("order") == "6" &&
          w.at("profile").at("g_prime") == 1)
        found = true;
    CHECK(found);

    auto text = run("certify --g 2 --n 3");
    CHECK(text.exit_code == 1);
    CHECK(text.out.find("FAIL") != std::string::npos);
    CHECK(text.out.find("bound witness") != std::string::npos);
  }

  SECTION("out-of-range slice exits 3, missing flags exit 2") {
    CHECK(run("certify --g 7 --n 1").exit_code == 3);
    CHECK(run("certify --g 2").exit_code == 2);
  }

  SECTION("--out writes the certificate file") {
    std::string path = tmp_path("cert.json");
    auto r = run("certify --g 2 --n 4 --out " + path);
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    nlohmann::json j2 = nlohmann::json::parse(f);
    CHECK(j2.at("pass") == true);
    std::remove(path.c_str());
  }
}

TEST_CASE("fan subcommands") {
  std::string built = tmp_path("fan.json");
  auto b = run("fan build --gdd 1 --n 1 --window 3 --out " + built);
  CHECK(b.exit_code == 0);

  auto c = run("fan check --gdd 1 --n 1 --window 3 --in " + built);
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("support_membership") != std::string::npos);
  CHECK(c.out.find("toric_canonical") != std::string::npos);

  auto rf = run("fan refine --gdd 1 --n 1 --window 3 --in " + built);
  CHECK(rf.exit_code == 0);  // staircase is already smooth; checks survive

  SECTION("hand-edited fan with a stray ray is reported") {
    std::string bad = tmp_path("bad_fan.json");
    write_file(bad,
               "{\"ambient_rank\":2,\"cones\":[[[\"1\",\"-1\"],[\"1\",\"0\"]],"
               "[[\"1\",\"0\"],[\"1\",\"1\"]],[[\"0\",\"1\"]]]}");
    auto r = run("fan check --gdd 1 --n 1 --in " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("in_cone violation") != std::string::npos);
    CHECK(r.out.find("(0, 1)") != std::string::npos);
    std::remove(bad.c_str());
  }

  SECTION("malformed fan file exits 2") {
    std::string junk = tmp_path("junk.json");
    write_file(junk, "this is not json {{");
    CHECK(run("fan check --gdd 1 --n 1 --in " + junk).exit_code == 2);
    std::remove(junk.c_str());
  }

  SECTION("unsupported base rank exits 3") {
    CHECK(run("fan build --gdd 3 --n 1 --window 2").exit_code == 3);
  }

  SECTION("rank-2 base builds and checks clean") {
    auto r2 = run("fan check --gdd 2 --n 1 --window 2");
    CHECK(r2.exit_code == 0);
  }
  std::remove(built.c_str());
}

TEST_CASE("verify subcommands") {
  auto co = run("verify cocycle --g 2 --trials 50 --seed 7");
  CHECK(co.exit_code == 0);
  CHECK(co.out.find("PASS") != std::string::npos);

  SECTION("deterministic given the seed") {
    auto a = run("--json verify cocycle --g 3 --trials 25 --seed 11");
    auto b = run("--json verify cocycle --g 3 --trials 25 --seed 11");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("pass") == true);
    CHECK(j.at("params").at("trials") == 25);
    CHECK(j.at("max_residual").get<double>() < 1e-9);
  }

  SECTION("torsion catalog fixed points") {
    auto fp = run("verify fixed-point --g 2");
    CHECK(fp.exit_code == 0);
    CHECK(fp.out.find("fixed-point catalog consistent") != std::string::npos);
    CHECK(fp.out.find("nontrivial eigenvalue present") != std::string::npos);
  }

  SECTION("unsupported rank exits 2") {
    CHECK(run("verify cocycle --g 4 --trials 5").exit_code == 2);
  }
}

TEST_CASE("slope subcommands, pinned lines") {
  auto n5 = run("slope class --which N0prime --g 5");
  CHECK(n5.exit_code == 0);
  CHECK(contains_line(n5.out, "108*lambda - 14*delta, slope 54/7"));

  auto th2 = run("slope class --which theta --g 2");
  CHECK(th2.exit_code == 0);
  CHECK(th2.out.find("slope 10") != std::string::npos);

  std::string sup = tmp_path("support.json");
  write_file(sup, "{\"g\":2,\"matrices\":[[[2,0],[0,2]]]}");
  auto fm = run("slope form --weight 10 --support " + sup);
  CHECK(fm.exit_code == 0);
  CHECK(contains_line(fm.out, "10"));

  SECTION("non-cusp-form support exits 1") {
    std::string deg = tmp_path("degenerate.json");
    write_file(deg, "{\"g\":2,\"matrices\":[[[2,0],[0,0]]]}");
    CHECK(run("slope form --weight 10 --support " + deg).exit_code == 1);
    std::remove(deg.c_str());
  }

  SECTION("slope table carries the exact rationals") {
    auto t = run("--json slope table");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("\"54/7\"") != std::string::npos);
    CHECK(t.out.find("\"550/73\"") != std::string::npos);
    auto txt = run("slope table");
    CHECK(txt.exit_code == 0);
    CHECK(txt.out.find("divisorial bound 550/73") != std::string::npos);
  }

  SECTION("unknown class name exits 2") {
    CHECK(run("slope class --which nonsense --g 2").exit_code == 2);
  }
  std::remove(sup.c_str());
}
