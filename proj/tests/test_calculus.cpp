#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "monk/calculus.hpp"
#include "monk/format.hpp"
#include "support.hpp"

using namespace monk;
using namespace testkit;

namespace {

const Theory& groups_theory() {
    static const Theory t = [] {
        Theory th = parse_theory(slurp_file(fixture_path("groups.thy")));
        validate_theory(th);
        return th;
    }();
    return t;
}

const Theory& cmi_theory() {
    static const Theory t = [] {
        Theory th = parse_theory(slurp_file(fixture_path("cmi.thy")));
        validate_theory(th);
        return th;
    }();
    return t;
}

Derivation var_node(const std::string& v, const AtomicType& a) {
    Derivation d;
    d.rule = Derivation::Rule::Variables;
    d.conclusion = {{{v, a}}, V(v), {a}};
    return d;
}

} // namespace

// ---------------------------------------------------------------------------
// node-by-node checking
// ---------------------------------------------------------------------------

TEST_CASE("variables and functions nodes") {
    const Signature& sig = groups_theory().signature;
    RuleSet none;

    Derivation x = var_node("x", "G");
    CHECK(check_derivation(x, none, sig) == x.conclusion);

    Derivation f;
    f.rule = Derivation::Rule::Functions;
    f.constant = "mul";
    f.premises = {var_node("x", "G"), var_node("y", "G")};
    f.conclusion = {{{"x", "G"}, {"y", "G"}}, A("mul", {V("x"), V("y")}), {"G"}};
    CHECK(check_derivation(f, none, sig) == f.conclusion);

    // a stored conclusion that does not match the rule is rejected
    Derivation bad = f;
    bad.conclusion.term = A("mul", {V("y"), V("x")});
    CHECK(error_code([&] { check_derivation(bad, none, sig); }) == "MalformedNode");

    // wrong premise count for the constant
    Derivation few = f;
    few.premises.pop_back();
    CHECK(error_code([&] { check_derivation(few, none, sig); }) ==
          "ArityMismatch");

    Derivation unknown = f;
    unknown.constant = "zzz";
    CHECK(error_code([&] { check_derivation(unknown, none, sig); }) ==
          "UnknownConstant");
}

TEST_CASE("tensor and unit nodes") {
    const Signature& sig = groups_theory().signature;
    RuleSet none;

    Derivation u;
    u.rule = Derivation::Rule::Unit;
    u.conclusion = {{}, E(), {}};
    CHECK(check_derivation(u, none, sig) == u.conclusion);

    Derivation t;
    t.rule = Derivation::Rule::Tensor;
    t.premises = {var_node("x", "G"), var_node("y", "G")};
    t.conclusion = {{{"x", "G"}, {"y", "G"}}, T({V("x"), V("y")}), {"G", "G"}};
    CHECK(check_derivation(t, none, sig) == t.conclusion);

    // tensoring two trees over the same variable clashes in the context
    Derivation clash = t;
    clash.premises[1] = var_node("x", "G");
    clash.conclusion = {{{"x", "G"}, {"x", "G"}}, T({V("x"), V("x")}), {"G", "G"}};
    CHECK(error_code([&] { check_derivation(clash, none, sig); }) ==
          "ContextClash");
}

TEST_CASE("substitution node composes sequents") {
    const Signature& sig = groups_theory().signature;
    RuleSet none;

    // s : x:G y:G |- inv(x) * y : G G
    Derivation invx;
    invx.rule = Derivation::Rule::Functions;
    invx.constant = "inv";
    invx.premises = {var_node("x", "G")};
    invx.conclusion = {{{"x", "G"}}, A("inv", {V("x")}), {"G"}};
    Derivation s;
    s.rule = Derivation::Rule::Tensor;
    s.premises = {invx, var_node("y", "G")};
    s.conclusion = {{{"x", "G"}, {"y", "G"}},
                    T({A("inv", {V("x")}), V("y")}),
                    {"G", "G"}};

    // t : u:G v:G |- mul(u,v) : G
    Derivation t;
    t.rule = Derivation::Rule::Functions;
    t.constant = "mul";
    t.premises = {var_node("u", "G"), var_node("v", "G")};
    t.conclusion = {{{"u", "G"}, {"v", "G"}}, A("mul", {V("u"), V("v")}), {"G"}};

    Derivation sub;
    sub.rule = Derivation::Rule::Substitution;
    sub.premises = {s, t};
    sub.conclusion = {{{"x", "G"}, {"y", "G"}},
                      A("mul", {A("inv", {V("x")}), V("y")}),
                      {"G"}};
    CHECK(check_derivation(sub, none, sig) == sub.conclusion);

    // codomain of s must match the context of t exactly
    Derivation narrow = sub;
    narrow.premises[0] = invx; // G instead of G G
    narrow.conclusion = {{{"x", "G"}}, A("mul", {A("inv", {V("x")})}), {"G"}};
    CHECK(error_code([&] { check_derivation(narrow, none, sig); }) == "TypeError");
}

TEST_CASE("weakening node") {
    const Signature& sig = groups_theory().signature;
    RuleSet w{true, false, false};

    Derivation d;
    d.rule = Derivation::Rule::Weakening;
    d.pos = 1;
    d.len = 1;
    d.premises = {var_node("x", "G")};
    d.conclusion = {{{"x", "G"}, {"w", "G"}}, V("x"), {"G"}};
    CHECK(check_derivation(d, w, sig) == d.conclusion);

    CHECK(error_code([&] { check_derivation(d, RuleSet{}, sig); }) ==
          "RuleDisabled");

    Derivation off = d;
    off.pos = 2; // block sticks out of the conclusion context
    CHECK(error_code([&] { check_derivation(off, w, sig); }) == "MalformedNode");

    Derivation mism = d;
    mism.pos = 0; // removes x, leaving w, which is not the premise context
    CHECK(error_code([&] { check_derivation(mism, w, sig); }) == "MalformedNode");
}

TEST_CASE("exchange node") {
    const Signature& sig = groups_theory().signature;
    RuleSet e{false, true, false};

    Derivation t;
    t.rule = Derivation::Rule::Tensor;
    t.premises = {var_node("x", "G"), var_node("y", "G")};
    t.conclusion = {{{"x", "G"}, {"y", "G"}}, T({V("x"), V("y")}), {"G", "G"}};

    Derivation d;
    d.rule = Derivation::Rule::Exchange;
    d.perm = {1, 0};
    d.premises = {t};
    d.conclusion = {{{"y", "G"}, {"x", "G"}}, T({V("x"), V("y")}), {"G", "G"}};
    CHECK(check_derivation(d, e, sig) == d.conclusion);

    CHECK(error_code([&] { check_derivation(d, RuleSet{}, sig); }) ==
          "RuleDisabled");

    Derivation dup = d;
    dup.perm = {0, 0};
    CHECK(error_code([&] { check_derivation(dup, e, sig); }) == "MalformedNode");

    Derivation shrt = d;
    shrt.perm = {0};
    CHECK(error_code([&] { check_derivation(shrt, e, sig); }) == "MalformedNode");

    Derivation range = d;
    range.perm = {2, 0};
    CHECK(error_code([&] { check_derivation(range, e, sig); }) == "MalformedNode");
}

TEST_CASE("contraction node") {
    const Signature& sig = groups_theory().signature;
    RuleSet c{false, false, true};

    Derivation t;
    t.rule = Derivation::Rule::Functions;
    t.constant = "mul";
    t.premises = {var_node("x", "G"), var_node("y", "G")};
    t.conclusion = {{{"x", "G"}, {"y", "G"}}, A("mul", {V("x"), V("y")}), {"G"}};

    Derivation d;
    d.rule = Derivation::Rule::Contraction;
    d.pos = 0;
    d.len = 1;
    d.premises = {t};
    d.conclusion = {{{"x", "G"}}, A("mul", {V("x"), V("x")}), {"G"}};
    CHECK(check_derivation(d, c, sig) == d.conclusion);

    CHECK(error_code([&] { check_derivation(d, RuleSet{}, sig); }) ==
          "RuleDisabled");

    Derivation wide = d;
    wide.len = 2; // 2*len exceeds the premise context
    CHECK(error_code([&] { check_derivation(wide, c, sig); }) == "MalformedNode");

    // contracted blocks must match type for type
    Signature two;
    two.types = {"A", "B"};
    Derivation pair;
    pair.rule = Derivation::Rule::Tensor;
    pair.premises = {var_node("a", "A"), var_node("b", "B")};
    pair.conclusion = {{{"a", "A"}, {"b", "B"}}, T({V("a"), V("b")}), {"A", "B"}};
    Derivation bad;
    bad.rule = Derivation::Rule::Contraction;
    bad.pos = 0;
    bad.len = 1;
    bad.premises = {pair};
    bad.conclusion = {{{"a", "A"}}, T({V("a"), V("a")}), {"A", "B"}};
    CHECK(error_code([&] { check_derivation(bad, c, two); }) == "MalformedNode");
}

// ---------------------------------------------------------------------------
// the decision procedure
// ---------------------------------------------------------------------------

TEST_CASE("elaborate decides derivability per rule set") {
    const Signature& sig = groups_theory().signature;

    Sequent dup = parse_sequent("x:G |- x * x : G G");
    CHECK(!elaborate(dup, RuleSet{}, sig));
    CHECK(!elaborate(dup, RuleSet{true, false, false}, sig));
    CHECK(!elaborate(dup, RuleSet{false, true, false}, sig));
    CHECK(elaborate(dup, RuleSet{false, false, true}, sig));
    CHECK(elaborate(dup, RuleSet::make_all(), sig));

    Sequent cancel = parse_sequent("x:G |- mul(inv(x),x) : G");
    CHECK(!elaborate(cancel, RuleSet{true, true, false}, sig));
    CHECK(elaborate(cancel, RuleSet{false, false, true}, sig));

    // dropping the context variable needs weakening
    Sequent unit = parse_sequent("x:G |- e() : G");
    CHECK(!elaborate(unit, RuleSet{}, sig));
    CHECK(!elaborate(unit, RuleSet{false, true, true}, sig));
    CHECK(elaborate(unit, RuleSet{true, false, false}, sig));

    // swapping needs exchange, or weakening plus contraction together
    Sequent swap = parse_sequent("x:G y:G |- mul(y,x) : G");
    CHECK(!elaborate(swap, RuleSet{}, sig));
    CHECK(!elaborate(swap, RuleSet{true, false, false}, sig));
    CHECK(!elaborate(swap, RuleSet{false, false, true}, sig));
    CHECK(elaborate(swap, RuleSet{false, true, false}, sig));
    CHECK(elaborate(swap, RuleSet{true, false, true}, sig));

    // elaborate returns the sequent's own conclusion, not a renaming
    auto d = elaborate(cancel, RuleSet::make_all(), sig);
    REQUIRE(d);
    CHECK(d->conclusion == cancel);
    CHECK(check_derivation(*d, RuleSet::make_all(), sig) == cancel);
}

TEST_CASE("elaborate separates hard errors from underivability") {
    const Signature& sig = groups_theory().signature;

    CHECK(error_code([&] {
              elaborate(parse_sequent("x:G |- zzz(x) : G"), RuleSet::make_all(),
                        sig);
          }) == "UnknownConstant");
    CHECK(error_code([&] {
              elaborate(parse_sequent("x:Z |- x : Z"), RuleSet::make_all(), sig);
          }) == "TypeError");
    CHECK(error_code([&] {
              elaborate(parse_sequent("x:G x:G |- x : G"), RuleSet::make_all(),
                        sig);
          }) == "ContextClash");
    CHECK(error_code([&] {
              elaborate(parse_sequent("x:G |- mul(x) : G"), RuleSet::make_all(),
                        sig);
          }) == "ArityMismatch");

    // a well-formed sequent at the wrong codomain is merely underivable
    CHECK(!elaborate(parse_sequent("x:G |- inv(x) : G G"), RuleSet::make_all(),
                     sig));
}

TEST_CASE("elaborate round trip over random derivable sequents") {
    const Signature& sig = groups_theory().signature;
    for (const RuleSet& rs : all_rule_sets()) {
        Rng rng(2024 + (rs.weakening ? 4 : 0) + (rs.exchange ? 2 : 0) +
                (rs.contraction ? 1 : 0));
        for (int i = 0; i < 150; ++i) {
            Sequent s = random_derivable_sequent(rng, rs, sig).sequent;
            auto d = elaborate(s, rs, sig);
            REQUIRE(d);
            CHECK(check_derivation(*d, rs, sig) == s);
        }
    }
}

// ---------------------------------------------------------------------------
// theories
// ---------------------------------------------------------------------------

TEST_CASE("bundled theories validate") {
    for (const char* f : {"groups.thy", "cmi.thy", "cubical.thy",
                          "counterexample.thy", "counterexample_all.thy"}) {
        Theory t = parse_theory(slurp_file(fixture_path(f)));
        CHECK_NOTHROW(validate_theory(t));
    }
    CHECK(groups_theory().rules.all());
    CHECK(groups_theory().axioms.size() == 5);
    CHECK(groups_theory().find_axiom("unit_l") != nullptr);
    CHECK(groups_theory().find_axiom("missing") == nullptr);
}

TEST_CASE("validate_theory rejects bad axioms") {
    // an axiom side underivable under the declared rules
    Theory t = parse_theory("kernel-theory 1\ntheory bad\nrules none\ntype A\n"
                            "axiom collapse (x:A y:A) : x = y\n");
    CHECK(error_code([&] { validate_theory(t); }) == "NonDerivableSide");

    // same axiom is fine once weakening is on
    Theory ok =
        parse_theory("kernel-theory 1\ntheory ok\nrules weakening\ntype A\n"
                     "axiom collapse (x:A y:A) : x = y\n");
    CHECK_NOTHROW(validate_theory(ok));

    Theory clash;
    clash.name = "clash";
    clash.signature.types = {"A"};
    clash.rules = RuleSet::make_all();
    clash.axioms.push_back(
        {"dup", {{{"x", "A"}, {"x", "A"}}, V("x"), V("x"), {"A"}}});
    CHECK(error_code([&] { validate_theory(clash); }) == "ContextClash");

    Theory unk;
    unk.name = "unk";
    unk.signature.types = {"A"};
    unk.rules = RuleSet::make_all();
    unk.axioms.push_back({"odd", {{{"x", "Z"}}, V("x"), V("x"), {"Z"}}});
    CHECK(error_code([&] { validate_theory(unk); }) == "TypeError");
}

// ---------------------------------------------------------------------------
// equational proofs
// ---------------------------------------------------------------------------

TEST_CASE("axiom and reflexivity nodes") {
    const Theory& t = cmi_theory();

    ProofTree ax;
    ax.rule = ProofTree::Rule::Axiom;
    ax.axiom = "comm";
    ax.conclusion = parse_formula("a:O b:O |- or(a,b) = or(b,a) : O");
    CHECK(check_proof(ax, t) == ax.conclusion);

    // the cited formula must be a renaming of the axiom, sides included
    ProofTree flip = ax;
    flip.conclusion = parse_formula("a:O b:O |- or(b,a) = or(a,b) : O");
    CHECK(error_code([&] { check_proof(flip, t); }) == "MalformedNode");

    ProofTree unknown = ax;
    unknown.axiom = "zzz";
    CHECK(error_code([&] { check_proof(unknown, t); }) == "UnknownAxiom");

    ProofTree refl;
    refl.rule = ProofTree::Rule::Reflexivity;
    refl.conclusion = parse_formula("x:O |- neg(x) = neg(x) : O");
    CHECK(check_proof(refl, t) == refl.conclusion);

    ProofTree uneq = refl;
    uneq.conclusion = parse_formula("x:O |- neg(x) = x : O");
    CHECK(error_code([&] { check_proof(uneq, t); }) == "MalformedNode");
}

TEST_CASE("symmetry and transitivity") {
    const Theory& t = cmi_theory();

    ProofTree unit;
    unit.rule = ProofTree::Rule::Axiom;
    unit.axiom = "unit";
    unit.conclusion = parse_formula("x:O |- or(x,bot()) = x : O");

    ProofTree sym;
    sym.rule = ProofTree::Rule::Symmetry;
    sym.premises = {unit};
    sym.conclusion = parse_formula("x:O |- x = or(x,bot()) : O");
    CHECK(check_proof(sym, t) == sym.conclusion);

    ProofTree trans;
    trans.rule = ProofTree::Rule::Transitivity;
    trans.premises = {unit, sym};
    trans.conclusion = parse_formula("x:O |- or(x,bot()) = or(x,bot()) : O");
    CHECK(check_proof(trans, t) == trans.conclusion);

    // premises must share the middle term
    ProofTree bad = trans;
    bad.premises = {unit, unit};
    CHECK(error_code([&] { check_proof(bad, t); }) == "MalformedNode");
}

TEST_CASE("substitution proof rule instantiates axioms at terms") {
    const Theory& t = cmi_theory();

    ProofTree refl;
    refl.rule = ProofTree::Rule::Reflexivity;
    refl.conclusion = parse_formula("u:O |- neg(u) = neg(u) : O");

    ProofTree invol;
    invol.rule = ProofTree::Rule::Axiom;
    invol.axiom = "invol";
    invol.conclusion = parse_formula("x:O |- neg(neg(x)) = x : O");

    ProofTree sub;
    sub.rule = ProofTree::Rule::Substitution;
    sub.premises = {refl, invol};
    sub.conclusion = parse_formula("u:O |- neg(neg(neg(u))) = neg(u) : O");
    CHECK(check_proof(sub, t) == sub.conclusion);

    // substituted codomain must match the replaced context
    ProofTree pair;
    pair.rule = ProofTree::Rule::Reflexivity;
    pair.conclusion = parse_formula("u:O v:O |- u * v = u * v : O O");
    ProofTree wide = sub;
    wide.premises[0] = pair;
    CHECK(error_code([&] { check_proof(wide, t); }) == "TypeError");
}

TEST_CASE("tensor weakening and exchange proof rules") {
    const Theory& t = cmi_theory();

    ProofTree left;
    left.rule = ProofTree::Rule::Axiom;
    left.axiom = "unit";
    left.conclusion = parse_formula("x:O |- or(x,bot()) = x : O");
    ProofTree right;
    right.rule = ProofTree::Rule::Reflexivity;
    right.conclusion = parse_formula("y:O |- neg(y) = neg(y) : O");

    ProofTree ten;
    ten.rule = ProofTree::Rule::Tensor;
    ten.premises = {left, right};
    ten.conclusion = parse_formula(
        "x:O y:O |- or(x,bot()) * neg(y) = x * neg(y) : O O");
    CHECK(check_proof(ten, t) == ten.conclusion);

    ProofTree weak;
    weak.rule = ProofTree::Rule::Weakening;
    weak.pos = 1;
    weak.len = 1;
    weak.premises = {left};
    weak.conclusion = parse_formula("x:O w:O |- or(x,bot()) = x : O");
    CHECK(check_proof(weak, t) == weak.conclusion);

    ProofTree ex;
    ex.rule = ProofTree::Rule::Exchange;
    ex.perm = {1, 0};
    ex.premises = {ten};
    ex.conclusion = parse_formula(
        "y:O x:O |- or(x,bot()) * neg(y) = x * neg(y) : O O");
    CHECK(check_proof(ex, t) == ex.conclusion);

    // contraction is disabled in this theory
    ProofTree con;
    con.rule = ProofTree::Rule::Contraction;
    con.pos = 0;
    con.len = 1;
    con.premises = {ten};
    con.conclusion = parse_formula(
        "x:O |- or(x,bot()) * neg(x) = x * neg(x) : O O");
    CHECK(error_code([&] { check_proof(con, t); }) == "RuleDisabled");
}

TEST_CASE("proofs demand derivable sides") {
    const Theory& t = cmi_theory();
    ProofTree refl;
    refl.rule = ProofTree::Rule::Reflexivity;
    refl.conclusion = parse_formula("x:O |- or(x,x) = or(x,x) : O");
    CHECK(error_code([&] { check_proof(refl, t); }) == "NonDerivableSide");
}

TEST_CASE("bundled proof files") {
    const Theory& t = cmi_theory();

    ProofTree good = parse_proof(slurp_file(fixture_path("proofs/comm_sym.prf")));
    CHECK(show_formula(check_proof(good, t)) ==
          "x:O y:O |- or(y,x) = or(x,y) : O");

    ProofTree bad =
        parse_proof(slurp_file(fixture_path("proofs/bad_contraction.prf")));
    CHECK(error_code([&] { check_proof(bad, t); }) == "RuleDisabled");
}
