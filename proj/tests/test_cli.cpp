#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chaut/cli.hpp"
#include "chaut/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = chaut::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CHAUT_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "chaut_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

/// The Farey automorphism written to a file through build-aut.
fs::path farey_map_file() {
  const Result r = run({"build-aut", data("farey_iso.json")});
  REQUIRE(r.code == 0);
  const fs::path p = scratch("farey_map.json");
  std::ofstream(p) << r.out;
  return p;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("validate") {
  const Result r = run({"validate", data("farey_source.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "unimodular: true"));
  for (const char* f : {"farey_iso.json", "square_iso.json", "identity_map.json", "unit.json", "strong_unit_g.json"}) {
    CHECK_MESSAGE(run({"validate", data(f)}).code == 0, f);
  }
  // The two-branch maps are endomorphisms, not automorphisms.
  for (const char* f : {"two_branch_q2_9.json", "two_branch_q1.json", "two_branch_q9_2.json"}) {
    const Result e = run({"validate", data(f)});
    CHECK_MESSAGE(e.code == 1, f);
    CHECK(contains(e.out, "automorphism: false"));
  }
}

TEST_CASE("build-aut piped into apply") {
  const Result built = run({"build-aut", data("farey_iso.json")});
  REQUIRE(built.code == 0);
  const chaut::Json j = chaut::parse_json(built.out);
  CHECK(j.at("format") == 1);
  CHECK(j.contains("cert"));
  const Result applied = run({"apply", "--point", "1/2"}, built.out);
  CHECK(applied.code == 0);
  CHECK(applied.out == "1/3\n");

  const Result sq = run({"build-aut", data("square_iso.json")});
  REQUIRE(sq.code == 0);
  CHECK(run({"apply", "-", "--point", "1/3,1/3"}, sq.out).out == "1/2,1/4\n");
}

TEST_CASE("report") {
  const Result id = run({"report", data("identity_map.json")});
  CHECK(id.code == 0);
  CHECK(contains(id.out, "fixes_unit: true"));
  CHECK(contains(id.out, "all: true"));
  CHECK(contains(id.out, "seed: 20240601"));

  const Result far = run({"report", farey_map_file().string(), "--seed", "5"});
  CHECK(far.code == 0);
  CHECK(contains(far.out, "all: false"));
  CHECK(contains(far.out, "den(1/2) = 2 but den(S(1/2)) = den(1/3) = 3"));
  CHECK(contains(far.out, "seed: 5"));
}

TEST_CASE("orbit and histogram CSV") {
  const std::string map = farey_map_file().string();
  const Result o = run({"orbit", map, "--point", "1/2", "-N", "4"});
  CHECK(o.code == 0);
  CHECK(o.out == "step,coord_1\n0,1/2\n1,1/3\n2,1/4\n3,1/5\n4,1/6\n");

  CHECK(run({"histogram", map, "-N", "10"}).code == 2);
  const Result h1 = run({"histogram", map, "-N", "100", "--starts", "50", "--seed", "3", "--bins", "5"});
  const Result h2 = run({"histogram", map, "-N", "100", "--starts", "50", "--seed", "3", "--bins", "5"});
  CHECK(h1.code == 0);
  CHECK(h1.out == h2.out);
  CHECK(contains(h1.out, "bin_1,count"));
}

TEST_CASE("unit orbit and spectrum") {
  const Result u = run({"unit-orbit", farey_map_file().string(), "-k", "5"});
  CHECK(u.code == 0);
  CHECK(contains(u.out, "pairwise distinct: true"));

  const Result g = run({"spectrum", data("strong_unit_g.json"), "--bound", "12"});
  CHECK(g.code == 0);
  CHECK(contains(" " + g.out, " 1 3 "));
  CHECK_FALSE(contains(" " + g.out, " 2 "));
  const Result one = run({"spectrum", data("unit.json"), "--bound", "12"});
  CHECK(one.out == "1 2 3 4 5 6 7 8 9 10 11 12\n");
}

TEST_CASE("plots are deterministic") {
  const std::string map = farey_map_file().string();
  const fs::path a = scratch("a.svg"), b = scratch("b.svg");
  CHECK(run({"plot", map, "-o", a.string()}).code == 0);
  CHECK(run({"plot", map, "-o", b.string()}).code == 0);
  const std::string sa = slurp(a);
  CHECK(sa == slurp(b));
  CHECK(contains(sa, "<svg"));
  CHECK(contains(sa, "1/2 -> 1/3"));
  CHECK(contains(sa, "2/3 -> 1/2"));

  const fs::path t = scratch("trace.svg");
  CHECK(run({"plot", data("two_branch_q9_2.json"), "--point", "1/3", "-N", "40", "--mode", "float", "-o",
             t.string()})
            .code == 0);
  CHECK(contains(slurp(t), "<polyline"));

  const Result sq = run({"build-aut", data("square_iso.json")});
  const fs::path sqf = scratch("square_map.json");
  std::ofstream(sqf) << sq.out;
  const fs::path img = scratch("square.svg");
  CHECK(run({"plot", sqf.string(), "-o", img.string()}).code == 0);
  CHECK(contains(slurp(img), "<polygon"));
}

TEST_CASE("exit codes") {
  const Result outside = run({"apply", farey_map_file().string(), "--point", "3/2"});
  CHECK(outside.code == 1);
  const chaut::Json e = chaut::parse_json(outside.err);
  CHECK(e.at("error") == "OutOfDomain");

  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{bad";
  const Result parse = run({"validate", bad.string()});
  CHECK(parse.code == 1);
  CHECK(chaut::parse_json(parse.err).at("error") == "ParseError");

  const fs::path tampered = scratch("tampered.json");
  chaut::Json m = chaut::load_json(farey_map_file().string());
  m["matrices"][0][0] = "2";
  std::ofstream(tampered) << m.dump();
  CHECK(run({"apply", tampered.string(), "--point", "1/4"}).code == 1);

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"apply", data("identity_map.json")}).code == 2);
  CHECK(run({"orbit", data("identity_map.json"), "--point", "1/2", "-N", "3", "--mode", "fuzzy"}).code == 2);
}

TEST_CASE("built binary in a shell pipeline") {
  const fs::path out = scratch("piped.txt");
  const std::string cmd = std::string("\"") + CHAUT_BINARY + "\" build-aut \"" + data("farey_iso.json") + "\" | \"" +
                          CHAUT_BINARY + "\" apply --point 1/2 > \"" + out.string() + "\"";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out) == "1/3\n");
}
