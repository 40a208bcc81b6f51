#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qtorus/cli.hpp"
#include "qtorus/json_io.hpp"

using namespace qtorus;
using io::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input)
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run_command(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string kRank3 = R"({"m": 4, "H": [[0, 1, 2], [-1, 0, 0], [-2, 0, 0]]})";

} // namespace

TEST_CASE("json round trips")
{
    const mpz_class big("-123456789012345678901234567890");
    CHECK(io::mpz_from_json(io::to_json(big)) == big);
    CHECK(io::to_json(big).is_string());
    CHECK(io::mpz_from_json(json(18446744073709551615ULL)) == mpz_class("18446744073709551615"));
    CHECK_THROWS_AS(io::mpz_from_json(json("12a")), io::FormatError);
    CHECK_THROWS_AS(io::mpz_from_json(json(1.5)), io::FormatError);

    std::mt19937_64 rng(43);
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 1 + it % 6;
        const std::int64_t m = 1 + it % 12;
        const auto h = oracle::random_antisymmetric(rng, n, -8, 8);
        CHECK(io::matrix_from_json(json::parse(io::to_json(h).dump())) == h);
        const auto nf = compute_normal_form({h, m});
        CHECK(io::normal_form_from_json(json::parse(io::to_json(nf).dump())) == nf);
    }

    const AlphaMonomial a({1, -2, 0}, 3, 5);
    CHECK(io::alpha_monomial_from_json(json::parse(io::to_json(a).dump()), 5) == a);
    const CycScalar c(mpq_class(-7, 3), 2, 5);
    CHECK(io::cyc_scalar_from_json(json::parse(io::to_json(c).dump()), 5) == c);

    const IsoWitness<CycScalar> w{{1, 0}, {c, CycScalar::one(5)}};
    const auto w2 = io::witness_from_json(json::parse(io::to_json(w).dump()), 5);
    CHECK(w2.r == w.r);
    CHECK(w2.scale == w.scale);

    const auto nf = compute_normal_form({IntMatrix{{0, 1, 2}, {-1, 0, 0}, {-2, 0, 0}}, 4});
    const auto sym = build_symbolic(nf);
    for (const auto& g : sym.x)
        CHECK(io::alpha_matrix_from_json(json::parse(io::to_json_sparse(g).dump()), 4) == g);
    const auto rep = build_module(nf, oracle::random_alpha(rng, 3, 4), CycScalar::qpower(1, 4));
    for (const auto& g : rep.X)
        CHECK(io::cyc_matrix_from_json(json::parse(io::to_json_sparse(g).dump()), 4) == g);
    const auto dense = io::to_json_dense(rep.X[0]);
    CHECK(dense.size() == 4);
    CHECK(dense[0][0] == 0);
    CHECK(dense[0][1] == io::to_json(rep.X[0].value(0)));
}

TEST_CASE("instance parsing")
{
    const auto inst = io::parse_instance(R"({"m": 4, "H": [[0, 1], [-1, 0]], "alpha": ["sym", {"num": 0}]})");
    CHECK(inst.ed.m == 4);
    REQUIRE(inst.alpha);
    CHECK((*inst.alpha)[0].symbolic);
    CHECK((*inst.alpha)[1].is_zero());
    CHECK_FALSE(inst.beta);

    try {
        io::parse_instance("{\n  \"m\": 4,\n  \"H\": [[0, 1] [-1, 0]]\n}");
        FAIL("no exception");
    } catch (const io::FormatError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_instance(R"({"H": [[0]]})"), io::FormatError);
    CHECK_THROWS_AS(io::parse_instance(R"({"m": 4, "H": [[0]], "alpha": ["x"]})"), io::FormatError);
    CHECK_THROWS_AS(io::parse_instance(R"({"m": 4, "H": [[0]], "alpha": [{"num": 1, "den": 0}]})"),
                    io::FormatError);
    CHECK_THROWS_AS(io::parse_instance("[1, 2]"), io::FormatError);
}

TEST_CASE("cli pi-degree and normal-form")
{
    const auto r = run({"pi-degree"}, R"({"m": 6, "H": [[0, 4], [-4, 0]]})");
    CHECK(r.code == cli::kOk);
    CHECK(r.out.substr(0, 2) == "3\n");
    CHECK(r.out.find("agrees") != std::string::npos);

    const auto j = run({"pi-degree", "--json"}, kRank3);
    CHECK(json::parse(j.out)["pi_degree"] == 4);
    CHECK(json::parse(j.out)["bruteforce"]["image_size"] == 16);

    const auto z = run({"normal-form"}, R"({"m": 5, "H": [[0, 0], [0, 0]]})");
    CHECK(z.code == cli::kOk);
    const auto nf = json::parse(z.out);
    CHECK(nf["s"] == 0);
    CHECK(nf["crank"] == 2);
}

TEST_CASE("cli build")
{
    const auto r = run({"build"}, kRank3);
    CHECK(r.code == cli::kOk);
    const auto j = json::parse(r.out);
    CHECK(j["dimension"] == 4);
    CHECK(j["domain"] == "symbolic");
    CHECK(j["x"].size() == 3);
    CHECK(j["x"][0].size() == 4);

    const auto d = run({"build", "--dense"}, R"({"m": 3, "H": [[0, 1], [-1, 0]],
        "alpha": [{"num": 2}, {"num": 1, "den": 2, "qexp": 1}]})");
    CHECK(d.code == cli::kOk);
    const auto dj = json::parse(d.out);
    CHECK(dj["domain"] == "rational");
    CHECK(dj["X"][0][0].size() == 3);

    const auto big = run({"build", "--dense"}, R"({"m": 9, "H": [[0,1,0,0],[-1,0,0,0],[0,0,0,1],[0,0,-1,0]]})");
    CHECK(big.code == cli::kPrecondition);

    const auto zeros = run({"build"}, R"({"m": 4, "H": [[0, 1, 2], [-1, 0, 0], [-2, 0, 0]],
        "alpha": [{"num": 1}, {"num": 0}, {"num": 3}]})");
    CHECK(zeros.code == cli::kOk);
    const auto zj = json::parse(zeros.out);
    CHECK(zj.contains("notice"));
    CHECK(zj["generators"] == json::array({1, 3}));
    CHECK(zj["dimension"] == 2);

    const auto mixed = run({"build"}, R"({"m": 4, "H": [[0, 1], [-1, 0]], "alpha": ["sym", {"num": 1}]})");
    CHECK(mixed.code == cli::kPrecondition);
}

TEST_CASE("cli verify")
{
    const auto r = run({"verify"}, kRank3);
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const auto j = run({"verify", "--json", "--trials", "5", "--seed", "3"}, kRank3);
    const auto rep = json::parse(j.out);
    CHECK(rep["ok"] == true);
    CHECK(rep["generation"]["prime"] == 5);
    CHECK(rep["generation"]["trials"] == 5);

    const auto skip = json::parse(run({"verify", "--json", "--trials", "0"}, kRank3).out);
    CHECK_FALSE(skip.contains("generation"));

    CHECK(run({"verify", "--prime", "7"}, kRank3).code == cli::kPrecondition);
    CHECK(run({"verify", "--prime", "21"}, kRank3).code == cli::kPrecondition);
    CHECK(run({"verify", "--prime", "13"}, kRank3).code == cli::kOk);
}

TEST_CASE("cli classify and intertwine")
{
    const std::string iso = R"({"m": 4, "H": [[0, 1], [-1, 0]],
        "alpha": [{"num": 2}, {"num": 3, "qexp": 1}],
        "beta":  [{"num": 2}, {"num": 3}]})";
    const auto c = run({"classify"}, iso);
    CHECK(c.code == cli::kOk);
    const auto w = json::parse(c.out);
    CHECK(w["r"] == json::array({1}));

    const auto t = run({"intertwine", "--dense"}, iso);
    CHECK(t.code == cli::kOk);
    CHECK(json::parse(t.out)["matrix"].size() == 4);

    const std::string non = R"({"m": 4, "H": [[0, 1], [-1, 0]],
        "alpha": [{"num": 2}, {"num": 3}], "beta": [{"num": 5}, {"num": 3}]})";
    const auto nc = run({"classify"}, non);
    CHECK(nc.code == cli::kOk);
    CHECK(nc.out == "not isomorphic\n");
    CHECK(run({"intertwine"}, non).code == cli::kVerificationFailed);

    const std::string supp = R"({"m": 4, "H": [[0, 1], [-1, 0]],
        "alpha": [{"num": 0}, {"num": 3}], "beta": [{"num": 2}, {"num": 0}]})";
    const auto sj = json::parse(run({"classify", "--json"}, supp).out);
    CHECK(sj["isomorphic"] == false);
    CHECK(sj.contains("reason"));

    CHECK(run({"classify"}, R"({"m": 4, "H": [[0, 1], [-1, 0]], "alpha": ["sym", "sym"],
        "beta": ["sym", "sym"]})").code == cli::kPrecondition);
    CHECK(run({"classify"}, R"({"m": 4, "H": [[0, 1], [-1, 0]], "alpha": [{"num": 1}, {"num": 1}]})").code ==
          cli::kPrecondition);
}

TEST_CASE("cli error paths and determinism")
{
    const auto bad = run({"normal-form"}, "{\"m\": 4,\n \"H\": [[0, 1], [-1, 0]");
    CHECK(bad.code == cli::kParseError);
    CHECK(bad.err.find("line 2") != std::string::npos);
    CHECK(run({"normal-form"}, R"({"m": 0, "H": [[0, 1], [-1, 0]]})").code == cli::kPrecondition);
    CHECK(run({"normal-form"}, R"({"m": 4, "H": [[0, 1], [1, 0]]})").code == cli::kPrecondition);
    CHECK(run({"frobnicate"}, "").code == cli::kParseError);
    CHECK(run({}, "").code == cli::kParseError);
    CHECK(run({"normal-form", "/nonexistent/file.json"}, "").code == cli::kParseError);
    CHECK(run({"selftest"}, "").code == cli::kOk);

    for (const auto& args : std::vector<std::vector<std::string>>{
             {"verify", "--json"}, {"build"}, {"pi-degree"}, {"normal-form"}}) {
        const auto a = run(args, kRank3), b = run(args, kRank3);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
