// end-to-end tests driving the installed binary through a shell.
// every golden here doubles as documentation of the output contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "monk/format.hpp"
#include "support.hpp"

using namespace monk;
using namespace testkit;

namespace {

struct cli_result {
    int status = -1;
    std::string out; // stdout and stderr interleaved
};

cli_result run_cli(const std::string& args) {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "monk_cli_out.txt";
    std::string cmd =
        std::string(MONK_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    cli_result r;
    if (WIFEXITED(raw)) r.status = WEXITSTATUS(raw);
    r.out = slurp_file(tmp.string());
    return r;
}

std::string fx(const std::string& name) { return fixture_path(name); }

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

// ---------------------------------------------------------------- check

TEST_CASE("check prints a derivation that re-verifies") {
    cli_result r = run_cli("check " + fx("groups.thy") +
                           " --sequent 'x:G |- mul(inv(x),x) : G'");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("kernel-derivation 1\n", 0) == 0);
    CHECK(contains(r.out, "contraction 0 1 :: x:G |- mul(inv(x),x) : G\n"));

    // the dump must load back and pass the checker against the same theory
    Theory t = parse_theory(slurp_file(fx("groups.thy")));
    Derivation d = parse_derivation(r.out);
    check_derivation(d, t.rules, t.signature);
    CHECK(show_sequent(d.conclusion) == "x:G |- mul(inv(x),x) : G");
}

TEST_CASE("check reports underivable sequents") {
    cli_result r = run_cli("check " + fx("counterexample.thy") +
                           " --sequent 'x:A |- x * x : A A'");
    CHECK(r.status == 1);
    CHECK(r.out == "NOT DERIVABLE\n");
}

TEST_CASE("check distinguishes malformed input from failure") {
    cli_result bad = run_cli("check " + fx("groups.thy") + " --sequent 'x:G |- mul('");
    CHECK(bad.status == 2);
    CHECK(contains(bad.out, "error ParseError"));

    cli_result gone = run_cli("check " + fx("no_such.thy") + " --sequent 'x:G |- x : G'");
    CHECK(gone.status == 2);
    CHECK(contains(gone.out, "error IoError"));
}

// ------------------------------------------------------------ factorize

TEST_CASE("factorize splits the group example into its two factors") {
    cli_result r = run_cli("factorize " + fx("groups.thy") +
                           " --sequent 'x:G |- mul(inv(x),x) : G'");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "structural: x:G |- x * x : G G\n"
          "functional: v1:G v2:G |- mul(inv(v1),v2) : G\n");
}

TEST_CASE("factorize fails cleanly outside the fragment") {
    cli_result r = run_cli("factorize " + fx("counterexample.thy") +
                           " --sequent 'x:A |- x * x : A A'");
    CHECK(r.status == 1);
    CHECK(r.out == "NOT DERIVABLE\n");
}

// ------------------------------------------------------------ normalize

TEST_CASE("normalize prints the identity normal form") {
    cli_result r = run_cli("normalize " + fx("groups.thy") + " --sequent 'x:G |- x : G'");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "kernel-normal 1\n"
          "sequent: v1:G |- v1 : G\n"
          "weakening: G => G [0]\n"
          "contraction: G => G [0]\n"
          "exchange: G => G [0]\n"
          "functional: v1:G |- v1 : G\n"
          "layers: 0\n");
}

TEST_CASE("normalize handles closed terms") {
    cli_result r = run_cli("normalize " + fx("groups.thy") + " --sequent '|- e() : G'");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "kernel-normal 1\n"
          "sequent: |- e() : G\n"
          "weakening: I => I []\n"
          "contraction: I => I []\n"
          "exchange: I => I []\n"
          "functional: |- e() : G\n"
          "layers: 1\n"
          "layer 0: e\n");
}

TEST_CASE("normalize isolates an exchange") {
    cli_result r = run_cli("normalize " + fx("groups.thy") +
                           " --sequent 'x:G y:G |- mul(y,x) : G'");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "kernel-normal 1\n"
          "sequent: v1:G v2:G |- mul(v2,v1) : G\n"
          "weakening: G G => G G [0 1]\n"
          "contraction: G G => G G [0 1]\n"
          "exchange: G G => G G [1 0]\n"
          "functional: v1:G v2:G |- mul(v1,v2) : G\n"
          "layers: 1\n"
          "layer 0: mul\n");
}

TEST_CASE("normalize layers the group example and roundtrips") {
    cli_result r = run_cli("normalize " + fx("groups.thy") +
                           " --sequent 'x:G |- mul(inv(x),x) : G'");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "kernel-normal 1\n"
          "sequent: v1:G |- mul(inv(v1),v1) : G\n"
          "weakening: G => G [0]\n"
          "contraction: G => G G [0 0]\n"
          "exchange: G G => G G [0 1]\n"
          "functional: v1:G v2:G |- mul(inv(v1),v2) : G\n"
          "layers: 2\n"
          "layer 0: inv * id:G\n"
          "layer 1: mul\n");

    // printed form reparses to the same dump: normalization is idempotent
    CHECK(show_normal(parse_normal(r.out)) == r.out);
}

// ------------------------------------------------------------------- eq

TEST_CASE("eq decides the word problem") {
    cli_result same = run_cli("eq " + fx("groups.thy") +
                              " --left 'x:G y:G |- mul(x,y) : G'"
                              " --right 'a:G b:G |- mul(a,b) : G'");
    CHECK(same.status == 0);
    CHECK(same.out == "EQUAL\n");

    // free theory: no group laws are applied
    cli_result diff = run_cli("eq " + fx("groups.thy") +
                              " --left 'x:G |- mul(x,e()) : G'"
                              " --right 'x:G |- x : G'");
    CHECK(diff.status == 1);
    CHECK(diff.out == "NOT EQUAL\n");

    cli_result shape = run_cli("eq " + fx("groups.thy") +
                               " --left 'x:G |- x : G'"
                               " --right 'x:G y:G |- mul(x,y) : G'");
    CHECK(shape.status == 2);
    CHECK(contains(shape.out,
                   "error SignatureMismatch: word problem needs equal context "
                   "types and codomains"));
}

// ---------------------------------------------------------- model-check

TEST_CASE("model-check verifies the bundled structures") {
    cli_result z2 = run_cli("model-check " + fx("groups.thy") + " " + fx("z2.model"));
    CHECK(z2.status == 0);
    CHECK(z2.out.rfind("kernel-report 1\n", 0) == 0);
    CHECK(contains(z2.out, "27 [mul]: PASS\n"));
    CHECK(contains(z2.out, "inv_l: PASS\n"));
    CHECK(contains(z2.out, "result: PASS\n"));

    for (const auto& [thy, mdl] :
         {std::pair<std::string, std::string>{"groups.thy", "hopf_z2_gf3.model"},
          {"cmi.thy", "omega.model"},
          {"cubical.thy", "omega_and.model"}}) {
        cli_result r = run_cli("model-check " + fx(thy) + " " + fx(mdl));
        CHECK(r.status == 0);
        CHECK(contains(r.out, "result: PASS\n"));
    }
}

TEST_CASE("model-check pinpoints a broken inverse") {
    cli_result r = run_cli("model-check " + fx("groups.thy") + " " + fx("z2_broken.model"));
    CHECK(r.status == 1);
    CHECK(contains(r.out, "inv_l: FAIL (witness 0)\n"));
    CHECK(contains(r.out, "inv_r: FAIL (witness 0)\n"));
    CHECK(contains(r.out, "unit_l: PASS\n"));
    CHECK(contains(r.out, "result: FAIL\n"));
}

// ----------------------------------------------------------- reconstruct

TEST_CASE("reconstruct rebuilds terms from truth tables") {
    struct row {
        const char* args;
        int status;
        const char* out;
    };
    const row rows[] = {
        {"--vars 2 --table 0111", 0, "x1 v x2\n"},
        {"--vars 1 --table 00", 0, "_|_ [dummy: x1]\n"},
        {"--vars 2 --table 1000", 0, "~(x1 v x2)\n"},
        {"--vars 2 --table 0001", 0, "~(~x1 v ~x2)\n"},
        {"--vars 2 --table 0110", 1, "NOT REALIZABLE\n"},
    };
    for (const row& want : rows) {
        CAPTURE(want.args);
        cli_result r = run_cli(std::string("reconstruct ") + want.args);
        CHECK(r.status == want.status);
        CHECK(r.out == want.out);
    }

    cli_result bad = run_cli("reconstruct --vars 2 --table 011");
    CHECK(bad.status == 2);
    CHECK(contains(bad.out, "error ParseError: table for 2 variables needs 4 bits"));
}

// ----------------------------------------------------------- prove-check

TEST_CASE("prove-check verifies and rejects proof files") {
    cli_result ok = run_cli("prove-check " + fx("cmi.thy") + " " + fx("proofs/comm_sym.prf"));
    CHECK(ok.status == 0);
    CHECK(ok.out == "verified: x:O y:O |- or(y,x) = or(x,y) : O\n");

    cli_result bad =
        run_cli("prove-check " + fx("cmi.thy") + " " + fx("proofs/bad_contraction.prf"));
    CHECK(bad.status == 1);
    CHECK(bad.out == "FAIL RuleDisabled: contraction is not enabled\n");
}

// ----------------------------------------------------------- usage errors

TEST_CASE("usage mistakes exit with the input-error code") {
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("check " + fx("groups.thy")).status == 2); // missing --sequent
    CHECK(run_cli("--help").status == 0);
}
