#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hecke/serialize.hpp>

#include "dispatch.hpp"

using namespace hecke;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hecke");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("expand") {
    const auto r = run({"expand", "--q", "3", "--x", "-0.5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["a0"] == 0);
    CHECK(j["digits"] == nlohmann::json::array({2}));
    CHECK(j["complete"] == true);
}

TEST_CASE("determinant of K") {
    const auto r = run({"det", "--q", "4", "--op", "K", "--s", "1", "--N", "30"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double det = j["det"]["re"];
    CHECK(det == doctest::Approx(j["closed_form"]["re"].get<double>()).epsilon(1e-12));
    CHECK(j["gap"].get<double>() < 1e-9);
    CHECK(j["det"]["im"] == 0);
}

TEST_CASE("verify") {
    const auto r = run({"verify", "--q", "5"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() == 6);
    // the unenlarged discs are rejected
    CHECK(run({"verify", "--q", "5", "--base", "0"}).code == 2);
}

TEST_CASE("scan output") {
    const auto empty = run({"scan", "--q", "3", "--grid", "9:9:0.1@im"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "s_re,s_im,abs_Z,convergence_gap,refined\n");
    const auto r = run({"scan", "--q", "3", "--grid", "0.9:1.1:0.05@re", "--N", "20"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n1,0,") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 64);
    CHECK(run({"bogus"}).code == 64);
    CHECK(run({"expand", "--q", "3"}).code == 64);
    CHECK(run({"expand", "--q", "2", "--x", "0.1"}).code == 64);
    CHECK(run({"det", "--q", "3", "--s", "1,2,3"}).code == 64);
    CHECK(run({"det", "--q", "3", "--s", "1", "--N", "3"}).code == 64);
    CHECK(run({"det", "--q", "3", "--s", "0"}).code == 64);
    CHECK(run({"scan", "--q", "3", "--grid", "1:2:0@re"}).code == 64);
    CHECK(run({"scan", "--q", "3", "--grid", "1:2@re"}).code == 64);
    CHECK(run({"det", "--q", "3", "--s", "1", "--format", "csv"}).code == 64);
    const auto r = run({"det", "--q", "3", "--s", "1", "--op", "nope"});
    CHECK(r.code == 64);
    CHECK(r.err.find("op must be") != std::string::npos);
}

TEST_CASE("eigenfunction errors") {
    CHECK(run({"eigfun", "--q", "3", "--s", "1.05"}).code == 2);
    const auto r = run({"eigfun", "--q", "3", "--s", "1", "--N", "30"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["functional"]["residual"].get<double>() < 1e-6);
    CHECK(j["components"].size() == 1);
}

TEST_CASE("output file and determinism") {
    const auto dir = std::filesystem::temp_directory_path() / "hecke_cli_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "orbits.csv").string();
    const std::vector<std::string> args{"orbits", "--q", "5", "--max-length", "6", "--out", path};
    REQUIRE(run(args).code == 0);
    std::ifstream f1(path, std::ios::binary);
    const std::string first((std::istreambuf_iterator<char>(f1)), {});
    REQUIRE(run(args).code == 0);
    std::ifstream f2(path, std::ios::binary);
    const std::string second((std::istreambuf_iterator<char>(f2)), {});
    CHECK(first == second);
    CHECK(first.rfind("word,fixed_point,length,trace\n", 0) == 0);
    CHECK(run({"zeta", "--q", "3", "--s", "2", "--N", "10"}).out == run({"zeta", "--q", "3", "--s", "2", "--N", "10"}).out);
    CHECK(run({"expand", "--q", "3", "--x", "0.1", "--out", "/nonexistent/dir/x.json"}).code == 74);
    std::filesystem::remove_all(dir);
}

TEST_CASE("every subcommand handles q up to 12") {
    for (const char* q : {"3", "11", "12"}) {
        CHECK(run({"expand", "--q", q, "--x", "0.3"}).code == 0);
        CHECK(run({"partition", "--q", q}).code == 0);
        CHECK(run({"orbits", "--q", q, "--max-length", "4"}).code == 0);
        CHECK(run({"det", "--q", q, "--s", "2", "--N", "8"}).code == 0);
        CHECK(run({"zeta", "--q", q, "--s", "2,1", "--N", "8"}).code == 0);
        CHECK(run({"scan", "--q", q, "--grid", "1.5:1.6:0.05@re", "--N", "8"}).code == 0);
        CHECK(run({"eigfun", "--q", q, "--s", "1", "--N", "16"}).code == 0);
    }
    CHECK(run({"verify", "--q", "12", "--N", "30"}).code == 0);
}

TEST_CASE("json formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3) == "0.3333333333333333");
    CHECK(format_double(1.0) == "1");
    CHECK(dump_json(Json{{"b", 1}, {"a", 2.5}}) == "{\n  \"a\": 2.5,\n  \"b\": 1\n}\n");
    CHECK(dump_json(to_json(cplx(1, -2))) == "{\n  \"im\": -2,\n  \"re\": 1\n}\n");
}

}
