#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "immgeo/catalog.hpp"
#include "immgeo/cli.hpp"
#include "immgeo/errors.hpp"
#include "immgeo/hessian.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/jacobian.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"

using namespace immgeo;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return CliResult{code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream file(path, std::ios::binary);
  file << content;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("point tuples round-trip through JSON exactly") {
  RatSampler sampler(5);
  const RationalTuple x = random_tuple(4, 3, sampler);
  CHECK(tuple_from_json(tuple_to_json(x)) == x);

  // Plain JSON integers are accepted alongside "p/q" strings.
  const Json j = Json::parse(R"({"n":2,"q":2,"blocks":[[[1,"1/2"],[0,3]],[["-2/3",4],[5,"0"]]]})");
  const RationalTuple y = tuple_from_json(j);
  CHECK(y.entry({1, 1, 2}) == Rational(1, 2));
  CHECK(y.entry({2, 1, 1}) == Rational(-2, 3));
  CHECK(y.entry({2, 2, 1}) == Rational(5));
}

TEST_CASE("point parsing reports the offending field") {
  CHECK_THROWS_WITH_AS((void)tuple_from_json(Json::parse(R"([1,2])")),
                       "point: top level must be an object", InputError);
  CHECK_THROWS_WITH_AS((void)tuple_from_json(Json::parse(R"({"q":2,"blocks":[]})")),
                       "point: field 'n' must be an integer", InputError);
  CHECK_THROWS_WITH_AS((void)tuple_from_json(Json::parse(R"({"n":0,"q":2,"blocks":[]})")),
                       "point: field 'n' must be positive", InputError);
  CHECK_THROWS_WITH_AS((void)tuple_from_json(Json::parse(R"({"n":2,"q":2,"blocks":[[]]})")),
                       "point: 'blocks' must hold n = 2 blocks, got 1", InputError);
  CHECK_THROWS_WITH_AS(
      (void)tuple_from_json(Json::parse(R"({"n":1,"q":2,"blocks":[[["1","2"]]]})")),
      "point: blocks[0] must be an array of q = 2 rows", InputError);
  CHECK_THROWS_WITH_AS(
      (void)tuple_from_json(Json::parse(R"({"n":1,"q":1,"blocks":[[[1.5]]]})")),
      "point: blocks[0][0][0] must be a rational string or an integer", InputError);
  CHECK_THROWS_AS(
      (void)tuple_from_json(Json::parse(R"({"n":1,"q":1,"blocks":[[["1/0"]]]})")), InputError);
}

TEST_CASE("eval subcommand prints exact values for point files") {
  const auto id_path =
      temp_file("immgeo_cli_identity.json", tuple_to_json(RationalTuple::identities(3, 2)).dump());
  const CliResult id = run({"eval", id_path.string()});
  CHECK(id.code == 0);
  CHECK(id.out == "2\n");

  RatSampler sampler(31);
  const RationalTuple zero_pt = sample_hypersurface_point(3, 2, sampler);
  const auto zero_path = temp_file("immgeo_cli_onhyp.json", tuple_to_json(zero_pt).dump());
  const CliResult zero = run({"eval", zero_path.string()});
  CHECK(zero.code == 0);
  CHECK(zero.out == "0\n");

  const CliResult json_run = run({"eval", id_path.string(), "--format", "json"});
  CHECK(json_run.code == 0);
  const Json doc = Json::parse(json_run.out);
  CHECK(doc["tool"]["name"] == "immgeo");
  CHECK(doc["value"] == "2");
  CHECK(doc["config"]["n"] == 3);

  const CliResult csv = run({"eval", id_path.string(), "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out == "value\n2\n");
}

TEST_CASE("eval without a file uses the seeded sampler deterministically") {
  const CliResult a = run({"eval", "--n", "3", "--q", "2", "--seed", "7"});
  const CliResult b = run({"eval", "--n", "3", "--q", "2", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("eval rejects malformed point files with diagnostics") {
  const auto bad_json = temp_file("immgeo_cli_bad.json", "{ this is not json");
  const CliResult parse_fail = run({"eval", bad_json.string()});
  CHECK(parse_fail.code == 2);
  CHECK(contains(parse_fail.err, "input error"));

  const auto bad_field =
      temp_file("immgeo_cli_badfield.json", R"({"n":2,"q":2,"blocks":[[["1","2"]],[]]})");
  const CliResult field_fail = run({"eval", bad_field.string()});
  CHECK(field_fail.code == 2);
  CHECK(contains(field_fail.err, "blocks[0]"));

  const CliResult missing = run({"eval", "/nonexistent/immgeo_point.json"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "cannot open point file"));
}

TEST_CASE("symmetry subcommand reports the invariance suite and the stabilizer") {
  const CliResult ok = run({"symmetry", "--n", "4", "--q", "3", "--seed", "1", "--trials", "3"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "conjugation generators: pass"));
  CHECK(contains(ok.out, "cyclic shift generators: pass"));
  CHECK(contains(ok.out, "transpose reversal generator: pass"));
  CHECK(contains(ok.out, "random generator words: pass"));
  CHECK(contains(ok.out, "infinitesimal action annihilates: pass"));
  CHECK(contains(ok.out, "infinitesimal control is nonvacuous: pass"));
  CHECK(contains(ok.out, "dynkin stabilizer order: 8 (dihedral: yes)"));

  const CliResult json_run =
      run({"symmetry", "--n", "3", "--q", "3", "--seed", "2", "--trials", "2", "--format", "json"});
  CHECK(json_run.code == 0);
  const Json doc = Json::parse(json_run.out);
  CHECK(doc["dynkin_stabilizer"]["order"] == 6);
  CHECK(doc["dynkin_stabilizer"]["dihedral"] == true);
  for (const auto& check : doc["checks"]) CHECK(check["pass"] == true);

  const CliResult corrupt = run({"symmetry", "--n", "3", "--q", "2", "--seed", "1", "--trials",
                                 "2", "--inject-corrupt-generator"});
  CHECK(corrupt.code == 1);
  CHECK(contains(corrupt.out, "conjugation generators: FAIL"));
}

TEST_CASE("hessian subcommand reports inverse verification and dual dimension") {
  const CliResult regular = run({"hessian", "--n", "3", "--q", "3", "--trials", "2", "--seed", "5"});
  CHECK(regular.code == 0);
  CHECK(contains(regular.out, "H(p)*C = I: verified"));
  CHECK(contains(regular.out, "dual dim = 25 (n*q^2 - 2 = 25)"));

  // Degenerate closed form: the determinant genuinely vanishes here, and the
  // computed dual dimension drops below the hypersurface value.
  const CliResult degenerate =
      run({"hessian", "--n", "3", "--q", "2", "--trials", "2", "--seed", "5"});
  CHECK(degenerate.code == 0);
  CHECK(contains(degenerate.out, "a_n = 0"));
  CHECK(contains(degenerate.out, "closed form degenerate (a_n = 0); unit check: not a unit"));
  CHECK(contains(degenerate.out, "dual dim = 8 (n*q^2 - 2 = 10)"));

  const CliResult small = run({"hessian", "--n", "2", "--q", "2", "--trials", "2", "--seed", "5"});
  CHECK(small.code == 0);
  CHECK(contains(small.out, "closed form needs n >= 3"));
  CHECK(contains(small.out, "dual dim = 6 (n*q^2 - 2 = 6)"));

  const CliResult csv =
      run({"hessian", "--n", "2", "--q", "2", "--trials", "2", "--seed", "5", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(contains(csv.out, "key,value\n"));
  CHECK(contains(csv.out, "dual_dim,6\n"));
}

TEST_CASE("sing subcommand emits the singular-locus catalog") {
  const CliResult json_run = run({"sing", "--n", "3", "--q", "2", "--format", "json"});
  CHECK(json_run.code == 0);
  const Json doc = Json::parse(json_run.out);
  CHECK(doc["summary"]["component_count"] == 4);
  REQUIRE(doc["components"].size() == 4);
  CHECK(doc["components"][0]["dim"] == 6);  // sorted by dimension, descending
  for (const auto& rec : doc["components"]) {
    CHECK(rec["kind"] == "sing");
    CHECK(rec["dim"] == rec["dim_oracle"]);
    // Round trip: the representative re-parses and is a genuine singular point.
    const RationalTuple rep = tuple_from_json(rec["representative"]);
    CHECK(is_singular_point(rep));
  }

  const CliResult origin = run({"sing", "--n", "2", "--q", "3", "--format", "json"});
  CHECK(origin.code == 0);
  const Json origin_doc = Json::parse(origin.out);
  CHECK(origin_doc["summary"]["component_count"] == 1);
  CHECK(origin_doc["components"][0]["dim"] == 0);

  const CliResult csv = run({"sing", "--n", "3", "--q", "2", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("kind,label,dim,dim_oracle\n", 0) == 0);
  CHECK(contains(csv.out, "sing,\""));

  const CliResult plain = run({"sing", "--n", "3", "--q", "2"});
  CHECK(plain.code == 0);
  CHECK(contains(plain.out, "components: 4"));
}

TEST_CASE("jacobian subcommand emits the locus catalog and enforces n >= 3") {
  const CliResult json_run = run({"jacobian", "--n", "4", "--q", "2", "--format", "json"});
  CHECK(json_run.code == 0);
  const Json doc = Json::parse(json_run.out);
  CHECK(doc["summary"]["component_count"] == 8);
  CHECK(doc["summary"]["locus_dim"] == 5);
  REQUIRE(doc["components"].size() == 8);
  CHECK(doc["components"][0]["label"] == "W(1,1)");
  for (const auto& rec : doc["components"]) {
    CHECK(rec["kind"] == "jacobian");
    CHECK(rec["dim"] == rec["dim_oracle"]);
    const RationalTuple rep = tuple_from_json(rec["representative"]);
    CHECK(in_jac_locus(rep));
  }

  const CliResult plain = run({"jacobian", "--n", "3", "--q", "3"});
  CHECK(plain.code == 0);
  CHECK(contains(plain.out, "components: 9"));
  CHECK(contains(plain.out, "locus_dim = 11"));

  const CliResult too_small = run({"jacobian", "--n", "2", "--q", "2"});
  CHECK(too_small.code == 2);
  CHECK(contains(too_small.err, "n >= 3"));
}

TEST_CASE("catalog output is byte-identical under a fixed configuration") {
  const CliResult a = run({"sing", "--n", "3", "--q", "2", "--format", "json", "--seed", "9"});
  const CliResult b = run({"sing", "--n", "3", "--q", "2", "--format", "json", "--seed", "9"});
  CHECK(a.out == b.out);
  const CliResult c = run({"jacobian", "--n", "3", "--q", "2", "--format", "json", "--seed", "9"});
  const CliResult d = run({"jacobian", "--n", "3", "--q", "2", "--format", "json", "--seed", "9"});
  CHECK(c.out == d.out);
}

TEST_CASE("--out writes the payload to a file instead of stdout") {
  const auto id_path =
      temp_file("immgeo_cli_identity2.json", tuple_to_json(RationalTuple::identities(3, 2)).dump());
  const auto out_path = std::filesystem::temp_directory_path() / "immgeo_cli_value.txt";
  std::filesystem::remove(out_path);
  const CliResult r = run({"eval", id_path.string(), "--out", out_path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream written(out_path);
  std::string content((std::istreambuf_iterator<char>(written)), std::istreambuf_iterator<char>());
  CHECK(content == "2\n");

  const CliResult bad = run({"eval", id_path.string(), "--out", "/nonexistent/dir/value.txt"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "cannot open output file"));
}

TEST_CASE("argument and guard failures map to the documented exit codes") {
  CHECK(run({}).code == 2);                                  // missing subcommand
  CHECK(run({"bogus"}).code == 2);                           // unknown subcommand
  CHECK(run({"eval", "--format", "xml"}).code == 2);         // invalid format value
  CHECK(run({"eval", "--n", "0"}).code == 2);                // non-positive size
  const CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "eval"));
  CHECK(contains(help.out, "jacobian"));

  const CliResult guard = run({"sing", "--n", "3", "--q", "250"});
  CHECK(guard.code == 3);
  CHECK(contains(guard.err, "size guard exceeded"));
}
