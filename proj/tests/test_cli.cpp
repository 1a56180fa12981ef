#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include <wittkit/json_io.hpp>
#include <wittkit/wittkit.hpp>

#include "test_util.hpp"

using namespace wittkit;
namespace fs = std::filesystem;

namespace
{

struct Run {
    int rc;
    std::string out;
};

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("wittkit-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string &args)
{
    static int counter = 0;
    const auto out = scratch() / ("out" + std::to_string(counter++));
    const std::string cmd = std::string("\"") + WITTKIT_CLI_PATH + "\" " + args + " > \"" + out.string()
                            + "\" 2>/dev/null";
    const int st = std::system(cmd.c_str());
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(out)};
}

json run_json(const std::string &args)
{
    auto r = run(args);
    EXPECT_EQ(r.rc, 0) << args;
    return json::parse(r.out);
}

} // namespace

TEST(Cli, AmLogMatchesLibrary)
{
    auto j = run_json("am-log --family hesse-cubic --mmax 6");
    const auto log = am_logarithm(builtin_family("hesse-cubic").family, 6);
    ASSERT_EQ(j["rows"].size(), 6u);
    for (std::size_t m = 1; m <= 6; ++m) {
        EXPECT_EQ(j["rows"][m - 1]["m"], m);
        EXPECT_EQ(poly_from_json<Integer>(j["rows"][m - 1]["a_m"]), log.coeff(m));
    }
    auto t = run("am-log --family hesse-cubic --mmax 4 --format tsv");
    EXPECT_EQ(t.out, "m\ta_m\n1\t1\n2\t1\n3\t1\n4\t1+6*x^3\n");
    auto m = run_json("am-log --family quintic --mmax 7 --mod 7 --method closed");
    EXPECT_EQ(poly_from_json<Integer>(m["rows"][6]["a_m"]), parse_polynomial<Integer>("1+x^5"));
}

TEST(Cli, FglMatchesLibrary)
{
    auto j = run_json("fgl --family hesse-cubic --deg 2 --at-x 0");
    ASSERT_EQ(j["coefficients"].size(), 3u);
    EXPECT_EQ(j["integrality"]["pass"], true);
    auto t = run("fgl --family hesse-cubic --deg 2 --at-x 0 --format tsv");
    EXPECT_EQ(t.out, "i\tj\tcoeff\n0\t1\t1\n1\t0\t1\n1\t1\t-1\n");
    auto h = run_json("fgl --family hesse --deg 5");
    const auto g = group_law_from_logarithm(am_logarithm(builtin_family("hesse").family, 5), 5);
    const auto &cs = h["coefficients"];
    EXPECT_EQ(cs.size(), g.series().terms().size());
    for (const auto &c : cs) {
        EXPECT_EQ(poly_from_json<Rational>(c["coeff"]), g.coefficient(c["i"], c["j"]));
    }
}

TEST(Cli, ScanMatchesLibrary)
{
    auto j = run_json("scan-ordinary --family hesse-cubic --pmax 5 --oracle");
    ASSERT_EQ(j["primes"].size(), 2u);
    EXPECT_EQ(j["primes"][0]["nonordinary"], json::array());
    EXPECT_EQ(j["primes"][1]["nonordinary"], json::array({1}));
    EXPECT_EQ(j["primes"][0]["oracle_match"], true);
    EXPECT_EQ(j["primes"][1]["oracle_match"], true);
    auto big = run_json("scan-ordinary --family hesse-cubic --pmax 31 --oracle");
    const auto rep = ordinarity_scan("hesse-cubic", 31, true);
    ASSERT_EQ(big["primes"].size(), rep.primes.size());
    for (std::size_t i = 0; i < rep.primes.size(); ++i) {
        EXPECT_EQ(big["primes"][i]["nonordinary"].get<std::vector<std::uint64_t>>(), rep.primes[i].nonordinary);
        EXPECT_EQ(poly_from_json<Integer>(big["primes"][i]["hasse_witt"]), rep.primes[i].hasse_witt);
    }
    // empty locus: header only
    EXPECT_EQ(run("scan-ordinary --family hesse-cubic --pmax 3 --locus-only --format tsv").out, "p\tlambda\n");
}

TEST(Cli, PfCheckAndCongruence)
{
    auto j = run_json("pf-check --family quintic --kmax 20 --series-order 60");
    EXPECT_EQ(j["all_pass"], true);
    EXPECT_EQ(j["rows"].size(), 20u);
    EXPECT_EQ(j["series_check"]["pass"], true);
    EXPECT_EQ(run("pf-check --family quintic --kmax 2 --format tsv").out, "k\tpass\tresidual\n1\ttrue\t\n2\ttrue\t\n");
    auto c = run_json("congruence --family hesse-cubic --p 3,5");
    ASSERT_EQ(c["rows"].size(), 2u);
    const auto log = closed_form_logarithm("hesse-cubic", 25);
    for (const auto &r : c["rows"]) {
        const auto lib = frobenius_power_congruence(log, r["p"].get<std::uint64_t>(), 2);
        EXPECT_EQ(r["pass"], lib.pass);
        EXPECT_EQ(poly_from_json<Integer>(r["lhs"]), lib.lhs);
        EXPECT_EQ(poly_from_json<Integer>(r["rhs"]), lib.rhs);
    }
    // custom operator theta: theta(a_4) = 18*x^3 is not divisible by 4
    auto k = run_json("pf-check --family hesse --operator theta --kmax 4");
    EXPECT_EQ(k["rows"][3]["pass"], false);
}

TEST(Cli, WittMatchesLibrary)
{
    auto j = run_json("witt --op mul --a 1,x,2 --b x,0,-1");
    WittVector<IntPolynomial> a({IntPolynomial(1), parse_polynomial<Integer>("x"), IntPolynomial(2)});
    WittVector<IntPolynomial> b({parse_polynomial<Integer>("x"), IntPolynomial(0), IntPolynomial(-1)});
    EXPECT_EQ(witt_from_json(j["result"]), witt_mul(a, b));
    EXPECT_EQ(run("witt --op add --a 1,0,0 --b 1,0,0 --format tsv").out, "i\tcoord\tghost\n1\t2\t2\n2\t-1\t2\n3\t-2\t2\n");
    auto t = run_json("witt --op teichmueller --a 2 --n 3");
    EXPECT_EQ(witt_from_json(t["result"]), teichmueller(IntPolynomial(2), 3));
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("").rc, 1);
    EXPECT_EQ(run("am-log --family hesse --mmax 3 --bogus").rc, 1);
    EXPECT_EQ(run("am-log --family nope --mmax 3").rc, 1);
    EXPECT_EQ(run("am-log --family hesse --mmax 3 --format xml").rc, 1);
    EXPECT_EQ(run("congruence --family hesse --p 2").rc, 2);
    EXPECT_EQ(run("scan-ordinary --family quintic --pmax 7 --oracle").rc, 2);
    EXPECT_EQ(run("witt --op from-ghost --a 1,0").rc, 2);
    EXPECT_EQ(run("scan-ordinary --family hesse --pmax 37 --oracle").rc, 3);
    EXPECT_EQ(run("scan-ordinary --family hesse --pmax 37 --oracle --budget 2000").rc, 0);
    EXPECT_EQ(run("--help").rc, 0);
}

TEST(Cli, ConfigManifestAndDeterminism)
{
    const auto cfg = scratch() / "wittkit.cfg";
    std::ofstream(cfg) << "# presets\nfamily = hesse-cubic\nformat = tsv\n\nbudget = 4000\n";
    auto r = run("am-log --mmax 4 --config \"" + cfg.string() + "\"");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out, "m\ta_m\n1\t1\n2\t1\n3\t1\n4\t1+6*x^3\n");
    // command line wins over config
    auto q = run("am-log --mmax 2 --family quintic --format json --config \"" + cfg.string() + "\"");
    EXPECT_EQ(json::parse(q.out)["family"], "quintic-cy3");
    const auto bad = scratch() / "bad.cfg";
    std::ofstream(bad) << "famly = hesse\n";
    EXPECT_EQ(run("am-log --mmax 2 --config \"" + bad.string() + "\"").rc, 1);

    const auto man = scratch() / "manifest.json";
    auto a = run("scan-ordinary --family hesse --pmax 13 --oracle --manifest \"" + man.string() + "\"");
    auto m = json::parse(slurp(man));
    EXPECT_EQ(m["version"], "0.1.0");
    EXPECT_EQ(m["bytes"], a.out.size());
    auto b = run("scan-ordinary --family hesse --pmax 13 --oracle --manifest \"" + man.string() + "\"");
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(slurp(man))["content_hash"], m["content_hash"]);
}
