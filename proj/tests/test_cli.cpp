#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "qplof/cli.hpp"

using namespace qplof;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("qplof_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
    return p.string();
}

std::string half_plane_doc() {
    return R"({"field":"rational","n":2,
      "Q":[["1","0"],["0","1"]],"c":["0","0"],"gamma":"0",
      "A":[["-1","-1"]],"b":["-2"]})";
}

} // namespace

TEST_CASE("cmd_solve solves and checks") {
    TempDir dir;
    std::string path = write_file(dir.path / "inst.json", half_plane_doc());

    std::ostringstream out, err;
    cli::SolveOptions opts;
    opts.path = path;
    opts.check = true;
    CHECK(cli::cmd_solve(opts, out, err) == 0);
    Json doc = Json::parse(out.str());
    CHECK(doc["status"] == "Optimal");
    CHECK(doc["value"] == "2");
    CHECK(doc["point"] == Json::array({"1", "1"}));
    CHECK(doc["verification"]["all_passed"] == true);
}

TEST_CASE("cmd_solve exit codes") {
    TempDir dir;
    std::ostringstream out, err;

    cli::SolveOptions missing;
    missing.path = (dir.path / "nope.json").string();
    CHECK(cli::cmd_solve(missing, out, err) == 2);

    cli::SolveOptions malformed;
    malformed.path = write_file(dir.path / "bad.json", "{not json");
    CHECK(cli::cmd_solve(malformed, out, err) == 2);

    cli::SolveOptions bad_literal;
    bad_literal.path = write_file(dir.path / "lit.json",
                                  R"({"field":"rational","n":1,"Q":[["1"]],
                                      "c":["0.5"],"gamma":"0","A":[],"b":[]})");
    CHECK(cli::cmd_solve(bad_literal, out, err) == 2);

    // Step-0 conflicting row: Infeasible is a successful solve.
    cli::SolveOptions infeasible;
    infeasible.path = write_file(dir.path / "inf.json",
                                 R"({"field":"rational","n":2,"Q":[["0","0"],["0","0"]],
                                     "c":["0","0"],"gamma":"0",
                                     "A":[["0","0"]],"b":["-1"]})");
    std::ostringstream out2;
    CHECK(cli::cmd_solve(infeasible, out2, err) == 0);
    CHECK(Json::parse(out2.str())["status"] == "Infeasible");
}

TEST_CASE("cmd_solve output is byte-stable") {
    TempDir dir;
    cli::SolveOptions opts;
    opts.path = write_file(dir.path / "inst.json", half_plane_doc());
    std::ostringstream a, b, err;
    CHECK(cli::cmd_solve(opts, a, err) == 0);
    CHECK(cli::cmd_solve(opts, b, err) == 0);
    CHECK(a.str() == b.str());
}

TEST_CASE("cmd_gen writes deterministic corpora") {
    TempDir dir;
    cli::GenOptions opts;
    opts.n = 2;
    opts.m = 4;
    opts.shape = "lp";
    opts.seed = 1;
    opts.count = 10;
    opts.out_dir = (dir.path / "corpus").string();
    std::ostringstream out, err;
    CHECK(cli::cmd_gen(opts, out, err) == 0);

    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(opts.out_dir))
        files.push_back(entry.path().string());
    CHECK(files.size() == 10);

    std::string first = files.front();
    std::ifstream in(first);
    std::stringstream before;
    before << in.rdbuf();
    std::ostringstream out2;
    CHECK(cli::cmd_gen(opts, out2, err) == 0);
    std::ifstream in2(first);
    std::stringstream after;
    after << in2.rdbuf();
    CHECK(before.str() == after.str());

    cli::GenOptions bad = opts;
    bad.shape = "weird";
    CHECK(cli::cmd_gen(bad, out, err) != 0);
}

TEST_CASE("cmd_verify accepts stored results and rejects tampering") {
    TempDir dir;
    std::string inst_path = write_file(dir.path / "inst.json", half_plane_doc());

    auto inst = parse_instance<Rational>(cli::load_json(inst_path));
    auto result = min_qp_lof(inst.P, inst.f);
    Json rdoc = result_to_json(result);
    std::string result_path = write_file(dir.path / "result.json", rdoc.dump(2));

    std::ostringstream err;
    CHECK(cli::cmd_verify({inst_path, result_path}, err) == 0);

    Json tampered = rdoc;
    tampered["value"] = "3";
    std::string tampered_path = write_file(dir.path / "tampered.json", tampered.dump(2));
    std::ostringstream err2;
    CHECK(cli::cmd_verify({inst_path, tampered_path}, err2) != 0);
    CHECK(err2.str().find("value mismatch") != std::string::npos);

    // Unbounded instance with a tampered ray direction.
    std::string unb_path = write_file(dir.path / "unb.json",
                                      R"({"field":"rational","n":2,
          "Q":[["0","1"],["1","0"]],"c":["0","0"],"gamma":"0",
          "A":[["-1","0"]],"b":["-1"]})");
    auto unb = parse_instance<Rational>(cli::load_json(unb_path));
    auto unb_result = min_qp_lof(unb.P, unb.f);
    REQUIRE(unb_result.status == Status::Unbounded);
    Json udoc = result_to_json(unb_result);
    std::string ok_path = write_file(dir.path / "unb_result.json", udoc.dump(2));
    std::ostringstream err3;
    CHECK(cli::cmd_verify({unb_path, ok_path}, err3) == 0);

    udoc["ray"]["d"] = Json::array({"-1", "0"}); // leaves the polyhedron
    std::string bad_ray = write_file(dir.path / "unb_bad.json", udoc.dump(2));
    std::ostringstream err4;
    CHECK(cli::cmd_verify({unb_path, bad_ray}, err4) != 0);
    CHECK(err4.str().find("ray infeasible") != std::string::npos);
}

TEST_CASE("cmd_oracle cross-checks a batch") {
    cli::OracleOptions opts;
    opts.n = 2;
    opts.m = 3;
    opts.count = 10;
    opts.seed = 3;
    std::ostringstream out, err;
    CHECK(cli::cmd_oracle(opts, out, err) == 0);
    CHECK(out.str().find("0 mismatches") != std::string::npos);
}

TEST_CASE("QPLOF_SCALE_LIMIT overrides the oracle bounds") {
    ::setenv("QPLOF_SCALE_LIMIT", "3:7", 1);
    auto limits = cli::scale_limits_from_env();
    CHECK(limits.max_vars == 3);
    CHECK(limits.max_rows == 7);
    ::setenv("QPLOF_SCALE_LIMIT", "4", 1);
    auto limits2 = cli::scale_limits_from_env();
    CHECK(limits2.max_vars == 4);
    CHECK(limits2.max_rows == 10);
    ::setenv("QPLOF_SCALE_LIMIT", "junk", 1);
    CHECK_THROWS_AS(cli::scale_limits_from_env(), Error);
    ::unsetenv("QPLOF_SCALE_LIMIT");
    auto defaults = cli::scale_limits_from_env();
    CHECK(defaults.max_vars == 5);
}
