#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "schema_validate.hpp"

// EULERSET_CLI_PATH and EULERSET_SCHEMA_PATH are injected by the build.

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

run_result run_cli(const std::string& args) {
    static int counter = 0;
    ++counter;
    const std::string out_path = "cli_stdout_" + std::to_string(counter) + ".tmp";
    const std::string err_path = "cli_stderr_" + std::to_string(counter) + ".tmp";
    const std::string cmd = std::string(EULERSET_CLI_PATH) + " " + args + " >" + out_path +
                            " 2>" + err_path;
    run_result r;
    const int status = std::system(cmd.c_str());
    r.exit_code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

const nlohmann::json& schema_root() {
    static const nlohmann::json root = nlohmann::json::parse(slurp(EULERSET_SCHEMA_PATH));
    return root;
}

nlohmann::json parse_valid_envelope(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    const schema::validator v(schema_root());
    const std::string error = v.validate(doc);
    INFO(error);
    REQUIRE(error.empty());
    return doc;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("every command emits a schema-valid envelope") {
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"totatives", "totatives 10"},
        {"sum", "sum 3 10"},
        {"sum", "sum 4 10 --method=general"},
        {"sum", "sum 2 9 --method=brute"},
        {"sum", "sum 0 7 --method=closed"},
        {"coeffs", "coeffs 4 10"},
        {"coeffs", "coeffs 3 9"},
        {"fit", "fit 2 2 --validate=2..60"},
        {"fit", "fit 4 4 --train=6,10,30,42 --validate=2..60"},
        {"ratio", "ratio 3 --n=2..20"},
        {"ratio", "ratio 4 --n=2..12 --jobs=3"},
        {"verify", "verify --kmax=3 --nmax=40"},
        {"verify", "verify --kmax=4 --nmax=25 --jobs=4"},
        {"artin", "artin --limit=1000"},
        {"zeta", "zeta 2 --limit=1000"},
        {"zeta", "zeta 2.5 --limit=500 --via-s3"},
        {"primes", "primes --limit=100"},
    };
    for (const auto& [command, args] : runs) {
        INFO(args);
        const run_result r = run_cli(args);
        REQUIRE(r.exit_code == 0);
        REQUIRE_FALSE(r.out.empty());
        REQUIRE(r.out.back() == '\n');
        const nlohmann::json env = parse_valid_envelope(r.out);
        REQUIRE(env["command"] == command);
    }
}

TEST_CASE("default sum runs and reconciles all methods") {
    const run_result r = run_cli("sum 3 10");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["parameters"] == nlohmann::json({{"k", 3}, {"n", 10}, {"method", "all"}}));
    CHECK(env["results"]["bruteforce"] == "1100");
    CHECK(env["results"]["closed"] == "1100");
    CHECK(env["results"]["general"] == "1100");
    REQUIRE(env["warnings"].size() == 1);
    CHECK(contains(env["warnings"][0].get<std::string>(), "m^3"));
    CHECK(contains(env["warnings"][0].get<std::string>(), "1/2, not 1/4"));
}

TEST_CASE("single-method sum reports its record") {
    const run_result r = run_cli("sum 4 10 --method=general");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["results"] == nlohmann::json({{"method", "general"}, {"value", "9044"}}));
    CHECK(env["warnings"].empty());

    const run_result closed = run_cli("sum 0 7 --method=closed");
    const nlohmann::json cenv = parse_valid_envelope(closed.out);
    CHECK(cenv["results"] == nlohmann::json({{"method", "closed"}, {"value", "6"}}));
}

TEST_CASE("coefficients envelope carries exact rationals") {
    const run_result r = run_cli("coeffs 4 10");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["results"]["coefficients"] ==
          nlohmann::json::array({"0/1", "50/3", "0/1", "-1085/3"}));
}

TEST_CASE("fit envelope reports the refutation with its smallest witness") {
    const run_result r = run_cli("fit 4 4 --validate=2..50");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["parameters"]["train"] == nlohmann::json::array({6, 10, 30, 42}));
    CHECK(env["parameters"]["validate"] == nlohmann::json({{"from", 2}, {"to", 50}}));
    CHECK(env["results"]["verdict"] == "counterexample");
    REQUIRE(env["results"]["witness_count"].get<int>() > 0);
    CHECK(env["results"]["witnesses"][0] ==
          nlohmann::json({{"n", "2"}, {"fitted", "-113113/3"}, {"actual", "7/3"}}));
    CHECK(env["results"]["weights"] ==
          nlohmann::json::array({"-20545/1", "20860/1", "2674/3", "-959/1"}));
}

TEST_CASE("ratio envelope matches the hand-checked cubic value") {
    const run_result r = run_cli("ratio 3 --n=10..10");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["results"]["target"] == "1/4");
    REQUIRE(env["results"]["entries"].size() == 1);
    CHECK(env["results"]["entries"][0] ==
          nlohmann::json({{"n", "10"}, {"ratio", "11/40"}, {"deviation", "1/40"}}));
}

TEST_CASE("verify envelope counts its grid") {
    const run_result r = run_cli("verify --kmax=3 --nmax=60");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["parameters"] == nlohmann::json({{"k_max", 3}, {"n_max", 60}}));
    CHECK(env["results"]["checks"] == 4 * 59);
    CHECK(env["results"]["mismatch_count"] == 0);
    CHECK(env["results"]["mismatches"].empty());
    REQUIRE(env["warnings"].size() == 1); // k_max >= 3 pulls in the cubic note
}

TEST_CASE("artin envelope brackets the density constant") {
    const run_result r = run_cli("artin --limit=1000");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    const nlohmann::json& est = env["results"]["estimate"];
    CHECK(est["prime_limit"] == 1000);
    CHECK(est["terms_used"] == 168);
    CHECK(est["tail_bound_kind"] == "artin_tail");
    CHECK(env["results"]["precision"] == "25 significant digits");
    const double lo = std::stod(est["value_lo"].get<std::string>());
    const double hi = std::stod(est["value_hi"].get<std::string>());
    CHECK(lo <= 0.3739558136);
    CHECK(0.3739558136 <= hi);
    CHECK(hi - lo < 0.01);
}

TEST_CASE("zeta envelope echoes the exponent as given") {
    const run_result r = run_cli("zeta 2 --limit=1000");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["parameters"] ==
          nlohmann::json({{"s", "2"}, {"prime_limit", 1000}, {"via_s3", false}}));
    CHECK(env["warnings"].empty());
    const nlohmann::json& est = env["results"]["estimate"];
    CHECK(est["tail_bound_kind"] == "zeta_tail");
    const double lo = std::stod(est["value_lo"].get<std::string>());
    const double hi = std::stod(est["value_hi"].get<std::string>());
    CHECK(lo <= 1.6449340668482264);
    CHECK(1.6449340668482264 <= hi);

    const run_result routed = run_cli("zeta 2 --limit=1000 --via-s3");
    REQUIRE(routed.exit_code == 0);
    const nlohmann::json renv = parse_valid_envelope(routed.out);
    CHECK(renv["parameters"]["via_s3"] == true);
    REQUIRE(renv["warnings"].size() == 1);
    CHECK(contains(renv["warnings"][0].get<std::string>(), "8, not 4"));
    // The round-tripped accumulation must reproduce the direct estimate bit
    // for bit.
    CHECK(renv["results"]["estimate"] == env["results"]["estimate"]);
}

TEST_CASE("primes envelope lists the primes as strings") {
    const run_result r = run_cli("primes --limit=50");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json env = parse_valid_envelope(r.out);
    CHECK(env["results"]["count"] == 15);
    CHECK(env["results"]["primes"][0] == "2");
    CHECK(env["results"]["primes"][14] == "47");
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::string> runs = {
        "sum 3 10",
        "fit 4 4 --validate=2..100",
        "artin --limit=200",
    };
    for (const std::string& args : runs) {
        INFO(args);
        const run_result a = run_cli(args);
        const run_result b = run_cli(args);
        REQUIRE(a.exit_code == 0);
        REQUIRE(a.out == b.out);
    }
}

TEST_CASE("thread count never changes the bytes") {
    const run_result v1 = run_cli("verify --kmax=2 --nmax=50 --jobs=1");
    const run_result v16 = run_cli("verify --kmax=2 --nmax=50 --jobs=16");
    REQUIRE(v1.exit_code == 0);
    REQUIRE(v1.out == v16.out);

    const run_result r1 = run_cli("ratio 2 --n=2..40 --jobs=1");
    const run_result r8 = run_cli("ratio 2 --n=2..40 --jobs=8");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r1.out == r8.out);
}

TEST_CASE("domain and input failures exit 2") {
    CHECK(run_cli("sum 5 1 --method=closed").exit_code == 2);
    CHECK(run_cli("totatives 0").exit_code == 2);
    CHECK(run_cli("artin --limit=1").exit_code == 2);
    CHECK(run_cli("zeta 1.0001 --limit=10").exit_code == 2);
    CHECK(run_cli("zeta nonsense --limit=10").exit_code == 2);
    CHECK(run_cli("fit 2 2 --train=6,10,15,30 --validate=2..20").exit_code == 2);
    CHECK(run_cli("fit 2 2 --train=6,10,30 --validate=2..20").exit_code == 2);
    CHECK(run_cli("ratio 3 --n=5..2").exit_code == 2);
    CHECK(run_cli("ratio 3 --n=xyz").exit_code == 2);
    CHECK(run_cli("verify --kmax=2 --nmax=1").exit_code == 2);

    const run_result r = run_cli("sum 5 1 --method=closed");
    CHECK(r.out.empty());
    CHECK(contains(r.err, "error:"));
    CHECK(contains(r.err, "closed form requires n >= 2"));
}

TEST_CASE("parse failures exit 2") {
    CHECK(run_cli("bogus 1").exit_code == 2);
    CHECK(run_cli("sum 3 10 --bogus").exit_code == 2);
    CHECK(run_cli("sum 3").exit_code == 2);
    CHECK(run_cli("sum -1 10").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("ratio 3").exit_code == 2);
    CHECK(run_cli("sum 3 10 --format=xml").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("resource limits exit 3") {
    CHECK(run_cli("sum 99 10 --method=general").exit_code == 3);
    CHECK(run_cli("totatives 20000001").exit_code == 3);
    CHECK(run_cli("primes --limit=2000000000").exit_code == 3);
}

TEST_CASE("csv output is exact and sends warnings to stderr") {
    const run_result sum = run_cli("sum 3 10 --format=csv");
    REQUIRE(sum.exit_code == 0);
    CHECK(sum.out == "method,value\n"
                     "bruteforce,1100\n"
                     "closed,1100\n"
                     "general,1100\n");
    CHECK(contains(sum.err, "warning: cubic identity note"));
    CHECK_FALSE(contains(sum.out, "warning"));

    const run_result tot = run_cli("totatives 10 --format=csv");
    CHECK(tot.out == "totative\n1\n3\n7\n9\n");

    const run_result primes = run_cli("primes --limit=10 --format=csv");
    CHECK(primes.out == "prime\n2\n3\n5\n7\n");

    const run_result ratio = run_cli("ratio 3 --n=10..10 --format=csv");
    CHECK(ratio.out == "n,ratio,ratio_approx_15sig,deviation,deviation_approx_15sig\n"
                       "10,11/40,0.275,1/40,0.025\n");

    const run_result coeffs = run_cli("coeffs 4 10 --format=csv");
    CHECK(coeffs.out == "i,coefficient,coefficient_approx_15sig\n"
                        "1,0/1,0\n"
                        "2,50/3,16.6666666666667\n"
                        "3,0/1,0\n"
                        "4,-1085/3,-361.666666666667\n");

    const run_result fit = run_cli("fit 2 2 --validate=2..10 --format=csv");
    CHECK(fit.out == "kind,label,exact,approx_15sig\n"
                     "verdict,,exact_fit,\n"
                     "weight,1,0/1,0\n"
                     "weight,(-1)^w,0/1,0\n"
                     "weight,R(n),0/1,0\n"
                     "weight,(-1)^w*R(n),1/2,0.5\n");

    const run_result verify = run_cli("verify --kmax=2 --nmax=10 --format=csv");
    CHECK(verify.out == "field,value\n"
                        "k_max,2\n"
                        "n_max,10\n"
                        "checks,27\n"
                        "mismatch_count,0\n");
}

TEST_CASE("output redirection writes the same bytes to a file") {
    const run_result direct = run_cli("sum 3 10");
    const std::string path = "cli_redirect_probe.tmp";
    const run_result redirected = run_cli("sum 3 10 --out=" + path);
    REQUIRE(redirected.exit_code == 0);
    CHECK(redirected.out.empty());
    CHECK(slurp(path) == direct.out);
    std::remove(path.c_str());

    const run_result bad = run_cli("sum 3 10 --out=/nonexistent_dir_xyz/file.json");
    CHECK(bad.exit_code == 3);
    CHECK(contains(bad.err, "cannot open output file"));
}
