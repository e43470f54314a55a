#include "fraclog/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using fraclog::cli::run;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "fraclog_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
    CHECK(fraclog::cli::fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fraclog::cli::fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fraclog::cli::fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("numbers are written with 17 significant digits") {
    CHECK(fraclog::cli::format_number(0.1) == "0.10000000000000001");
    CHECK(fraclog::cli::format_number(35.0) == "35");
}

TEST_CASE("constants command") {
    const fs::path prefix = scratch("constants");
    const Result r = call({"constants", "--n", "1", "--s", "0.5", "--out", prefix.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(prefix.string() + ".json"));
    CHECK(j["c_ns"].get<double>() == doctest::Approx(0.3183098862).epsilon(1e-10));
    CHECK(j["b_ns"].get<double>() == doctest::Approx(0.8455686702).epsilon(1e-10));
    CHECK(j["rng"].get<std::string>() == "mt19937_64/53bit");
}

TEST_CASE("weyl command counts the torus modes") {
    const fs::path prefix = scratch("weyl");
    const Result r = call({"weyl", "--torus-side", "6.283185307", "--n", "1", "--s", "0.5", "--lambda-max", "100",
                           "--out", prefix.string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(prefix.string() + ".csv"));
    REQUIRE(rows.size() == 11);
    CHECK(rows.front() == "lambda,count,riesz,phase_space,geometric_ratio,weyl_ratio");
    CHECK(rows.back().rfind("100,35,", 0) == 0);
}

TEST_CASE("validation errors exit with status 1 and name the bound") {
    Result r = call({"constants", "--s", "1.5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("(0,1)") != std::string::npos);
    r = call({"constants", "--n", "3"});
    CHECK(r.code == 1);
    r = call({"poisson", "--r", "0.9", "--elements", "16"});
    CHECK(r.code == 1);
    CHECK(r.err.find("e^{-|b|/2}") != std::string::npos);
    r = call({"frobnicate"});
    CHECK(r.code == 1);
    r = call({});
    CHECK(r.code == 1);
    r = call({"eig", "--route", "fem", "--elements", "16"});
    CHECK(r.code == 1);
}

TEST_CASE("an uncertified Poisson solve writes its output and exits with 2") {
    const fs::path prefix = scratch("poisson_low");
    fs::remove(prefix.string() + ".csv");
    const Result r = call({"poisson", "--potential", "1", "--elements", "16", "--out", prefix.string()});
    CHECK(r.code == 2);
    CHECK(fs::exists(prefix.string() + ".csv"));
    const auto j = nlohmann::json::parse(slurp(prefix.string() + ".json"));
    CHECK_FALSE(j["certified"].get<bool>());
}

TEST_CASE("a certified Poisson solve exits with 0; zero data gives zero") {
    const Result r = call({"poisson", "--elements", "16", "--source", "zero"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out.substr(r.out.find('{')));
    CHECK(j["sup_norm"].get<double>() == 0.0);
    CHECK(j["certified"].get<bool>());
}

TEST_CASE("unwritable output path is an I/O error") {
    const Result r = call({"constants", "--out", "/nonexistent_dir_for_fraclog/x"});
    CHECK(r.code == 2);
}

TEST_CASE("empty and single-row tables") {
    const fs::path empty = scratch("empty");
    REQUIRE(call({"form", "--fields", "0", "--elements", "16", "--out", empty.string()}).code == 0);
    CHECK(lines(slurp(empty.string() + ".csv")).size() == 1);
    const fs::path one = scratch("one");
    REQUIRE(call({"symbol", "--points", "1", "--xi-min", "2", "--out", one.string()}).code == 0);
    CHECK(lines(slurp(one.string() + ".csv")).size() == 2);
}

TEST_CASE("config file values sit between defaults and flags") {
    const fs::path cfg = scratch("eig.ini");
    std::ofstream(cfg) << "[eig]\ncount = 2\nelements = 16\n";
    Result r = call({"--config", cfg.string(), "eig"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out.substr(0, r.out.find('{'))).size() == 3);
    r = call({"--config", cfg.string(), "eig", "--count", "4"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out.substr(0, r.out.find('{'))).size() == 5);
}

TEST_CASE("every command is byte-for-byte reproducible") {
    const std::vector<std::vector<std::string>> commands{
        {"constants", "--n", "2", "--s", "0.3"},
        {"symbol", "--points", "5", "--multiplier"},
        {"apply", "--x", "0", "0.5", "--route", "fourier"},
        {"form", "--fields", "3", "--elements", "16", "--seed", "9"},
        {"eig", "--elements", "16", "--count", "3", "--route", "torus"},
        {"poisson", "--elements", "16"},
        {"weyl", "--lambda-max", "50"},
        {"extension", "--t-list", "0.1", "0.05", "0.025"},
    };
    int k = 0;
    for (const auto& cmd : commands) {
        std::vector<std::uint64_t> hashes;
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path prefix = scratch("det" + std::to_string(k) + "_" + std::to_string(rep));
            auto args = cmd;
            args.push_back("--out");
            args.push_back(prefix.string());
            REQUIRE(call(args).code == 0);
            std::uint64_t h = fraclog::cli::fnv1a_file(prefix.string() + ".json");
            if (fs::exists(prefix.string() + ".csv")) h ^= fraclog::cli::fnv1a_file(prefix.string() + ".csv") * 31u;
            hashes.push_back(h);
        }
        CHECK(hashes[0] == hashes[1]);
        ++k;
    }
}
