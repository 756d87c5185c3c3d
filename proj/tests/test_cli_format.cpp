#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "commands.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/format.hpp"
#include "cyclo/goldkim.hpp"

using namespace cyclo;

namespace {

cli::Result cmd(std::vector<std::string> args) { return cli::run(args); }

int count_lines_with(const std::string& text, const std::string& needle)
{
    int c = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++c;
    return c;
}

} // namespace

TEST_CASE("parse_index inverts format_index over whole bases")
{
    for (std::int64_t n : {9, 12, 15, 16, 20, 45, 105, 120}) {
        auto f = factorize_conductor(n);
        for (const auto& g : enumerate_basis(*f)) {
            CAPTURE(format_index(g));
            CHECK(parse_index(format_index(g)) == g);
            CHECK(index_from_json(index_to_json(g)) == g);
        }
    }
}

TEST_CASE("parse_index rejects malformed text")
{
    for (const char* bad : {"", "xi(1)", "(1,2;0)", "(2,1;0,0)", "(0;1)", "xi(1;-1)", "(1,2;0,1", "(1;0)x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_index(bad), InputError);
    }
}

TEST_CASE("exponent vectors round-trip through JSON")
{
    auto f = factorize_conductor(105);
    const auto b = enumerate_basis(*f);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        ExponentVector v;
        for (int k = 0; k < 6; ++k) {
            const auto e = static_cast<std::int64_t>(rng() % 11) - 5;
            if (e)
                v[b[rng() % b.size()]] = e;
        }
        CHECK(exponents_from_json(exponents_to_json(v)) == v);
        // dump and reparse the text, not just the tree
        CHECK(exponents_from_json(Json::parse(exponents_to_json(v).dump())) == v);
    }
    CHECK(format_exponents({}) == "0");
}

TEST_CASE("basis listings round-trip and carry the count")
{
    auto f = factorize_conductor(60);
    const auto b = enumerate_basis(*f);
    const auto j = basis_to_json(*f, b);
    CHECK(j["count"] == b.size());
    CHECK(j["expected"] == f->phi_n() / 2 - 1);
    const auto back = basis_from_json(Json::parse(j.dump()));
    CHECK(back.n == 60);
    CHECK(back.basis == b);
    CHECK_THROWS_AS(basis_from_json(Json::parse(R"({"n": 60})")), InputError);
}

TEST_CASE("cli gk-basis")
{
    auto r = cmd({"gk-basis", "--n", "15"});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("count 3, expected phi(n)/2-1 = 3") != std::string::npos);

    r = cmd({"--format", "json", "gk-basis", "--n", "9"});
    CHECK(r.code == cli::kPass);
    const auto j = Json::parse(r.out);
    REQUIRE(j["basis"].size() == 2);
    for (const auto& e : j["basis"])
        CHECK(e["label"].get<std::string>().rfind("xi(", 0) == 0);

    r = cmd({"gk-basis", "--n", "6"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("use n = 3") != std::string::npos);
    CHECK(cmd({"gk-basis"}).code == cli::kInputError);
    CHECK(cmd({"--help"}).code == cli::kPass);
}

TEST_CASE("cli decompose")
{
    auto r = cmd({"decompose", "--n", "15", "--symbol", "(1,2;1,0)^1"});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("(1,2;0,0)^-1 * xi(2;1)^-1") != std::string::npos);

    r = cmd({"--format", "json", "decompose", "--n", "20", "--symbol", "(1,2;0,1)^2 * (2;3)^1 * (2;0)^-1"});
    CHECK(r.code == cli::kPass);
    const auto j = Json::parse(r.out);
    CHECK(j["residual"].get<double>() < 1e-30);
    CHECK(j["passed"] == true);

    r = cmd({"decompose", "--n", "15", "--symbol", "(1;1)^1"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.rfind("non-unit", 0) == 0);
    r = cmd({"decompose", "--n", "15", "--symbol", "oops"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.rfind("input error", 0) == 0);
}

TEST_CASE("cli deployed")
{
    auto r = cmd({"--format", "json", "deployed", "--n", "35", "--degrees", "2,6"});
    CHECK(r.code == cli::kPass);
    const auto j = Json::parse(r.out);
    CHECK(j["generators"].size() == 5);
    CHECK(j["unit_rank"] == 5);
    CHECK(j["real_contraction"] == true);

    r = cmd({"deployed", "--n", "35", "--degrees", "2,4"});
    CHECK(r.code == cli::kInputError);

    r = cmd({"deployed", "--n", "35", "--degrees", "2,6", "--verify", "none"});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("checks:") == std::string::npos);

    r = cmd({"deployed", "--n", "1045", "--degrees", "2,2,2"});
    CHECK(r.code == cli::kCheckFailed);
    CHECK(r.out.find("SNF divisors 1 1 2") != std::string::npos);
}

TEST_CASE("cli real-basis, block-counts and verify")
{
    auto r = cmd({"real-basis", "--n", "12"});
    CHECK(r.code == cli::kPass);
    CHECK(count_lines_with(r.out, "type2") == 1);

    r = cmd({"block-counts", "--d", "2,3"});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("= 5, g_R(full) - 1 = 6 - 1") != std::string::npos);
    CHECK(cmd({"block-counts", "--d", "1,3"}).code == cli::kInputError);

    r = cmd({"verify", "--n", "9,12"});
    CHECK(r.code == cli::kPass);
    CHECK(count_lines_with(r.out, "pass") == 19);

    CHECK(cmd({"--bits", "8", "verify", "--n", "9"}).code == cli::kInputError);
}
