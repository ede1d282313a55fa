// command line front end: every kernel operation behind one subcommand.
// exit codes: 0 success, 1 semantic negative, 2 malformed input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "monk/format.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) monk::fail("IoError", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

monk::Theory load_theory(const std::string& path) {
    monk::Theory t = monk::parse_theory(slurp(path));
    monk::validate_theory(t);
    return t;
}

int cmd_check(const std::string& theory_path, const std::string& sequent) {
    monk::Theory t = load_theory(theory_path);
    monk::Sequent s = monk::parse_sequent(sequent);
    std::optional<monk::Derivation> d = monk::elaborate(s, t.rules, t.signature);
    if (!d) {
        std::cout << "NOT DERIVABLE\n";
        return 1;
    }
    std::cout << monk::show_derivation(*d);
    return 0;
}

int cmd_factorize(const std::string& theory_path, const std::string& sequent) {
    monk::Theory t = load_theory(theory_path);
    monk::Sequent s = monk::parse_sequent(sequent);
    try {
        monk::Factorisation f = monk::factorize(s, t.rules, t.signature);
        std::cout << "structural: "
                  << monk::show_sequent(monk::structural_factor_sequent(s, f)) << "\n";
        std::cout << "functional: " << monk::show_sequent(f.functional) << "\n";
    } catch (const monk::error& e) {
        if (e.code != "NotDerivable") throw;
        std::cout << "NOT DERIVABLE\n";
        return 1;
    }
    return 0;
}

int cmd_normalize(const std::string& theory_path, const std::string& sequent) {
    monk::Theory t = load_theory(theory_path);
    monk::Sequent s = monk::parse_sequent(sequent);
    try {
        monk::Factorisation f = monk::factorize(s, t.rules, t.signature);
        monk::StructuralNormalForm nf =
            monk::structural_normal_form(f.structural, t.rules);
        monk::NormalDump dump;
        dump.sequent = monk::canonical_rename(s);
        dump.weakening = nf.weakening;
        dump.contraction = nf.contraction;
        dump.exchange = nf.exchange;
        dump.functional = f.functional;
        dump.layers = monk::functional_normal_form(f.functional);
        std::cout << monk::show_normal(dump);
    } catch (const monk::error& e) {
        if (e.code != "NotDerivable") throw;
        std::cout << "NOT DERIVABLE\n";
        return 1;
    }
    return 0;
}

int cmd_eq(const std::string& theory_path, const std::string& left,
           const std::string& right) {
    monk::Theory t = load_theory(theory_path);
    monk::Sequent a = monk::parse_sequent(left);
    monk::Sequent b = monk::parse_sequent(right);
    if (monk::term_eq(a, b, t.rules, t.signature)) {
        std::cout << "EQUAL\n";
        return 0;
    }
    std::cout << "NOT EQUAL\n";
    return 1;
}

int cmd_model_check(const std::string& theory_path, const std::string& model_path) {
    monk::Theory t = load_theory(theory_path);
    monk::Prestructure m = monk::parse_model(slurp(model_path), t.signature);
    monk::StructureReport r = monk::model_check(m, t);
    std::cout << monk::show_report(r);
    return r.verified() ? 0 : 1;
}

int cmd_reconstruct(int vars, const std::string& bits) {
    monk::TruthTable t;
    t.arity = vars;
    if (vars < 0 || bits.size() != (size_t)1 << vars)
        monk::fail("ParseError", "table for " + std::to_string(vars) +
                                     " variables needs " +
                                     std::to_string((size_t)1 << vars) + " bits");
    for (char c : bits) {
        if (c != '0' && c != '1')
            monk::fail("ParseError", "table bits must be 0 or 1");
        t.values.push_back(c == '1');
    }
    std::optional<monk::Reconstruction> r = monk::reconstruct(t);
    if (!r) {
        std::cout << "NOT REALIZABLE\n";
        return 1;
    }
    std::cout << monk::show_canonical(r->term);
    if (!r->dummies.empty()) {
        std::cout << " [dummy:";
        for (int v : r->dummies) std::cout << " x" << v;
        std::cout << "]";
    }
    std::cout << "\n";
    return 0;
}

int cmd_prove_check(const std::string& theory_path, const std::string& proof_path) {
    monk::Theory t = load_theory(theory_path);
    monk::ProofTree p = monk::parse_proof(slurp(proof_path));
    try {
        monk::Formula f = monk::check_proof(p, t);
        std::cout << "verified: " << monk::show_formula(f) << "\n";
    } catch (const monk::error& e) {
        if (e.code == "ParseError" || e.code == "IoError") throw;
        std::cout << "FAIL " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"substructural algebraic theory kernel"};
    app.require_subcommand(1);

    std::string theory_path, model_path, proof_path, sequent, left, right, table;
    int vars = 0;

    CLI::App* check = app.add_subcommand("check", "decide derivability of a sequent");
    check->add_option("theory", theory_path, "theory file")->required();
    check->add_option("--sequent", sequent, "sequent text")->required();

    CLI::App* factorize =
        app.add_subcommand("factorize", "split a term into structural and functional factors");
    factorize->add_option("theory", theory_path, "theory file")->required();
    factorize->add_option("--sequent", sequent, "sequent text")->required();

    CLI::App* normalize =
        app.add_subcommand("normalize", "print the full normal form of a term");
    normalize->add_option("theory", theory_path, "theory file")->required();
    normalize->add_option("--sequent", sequent, "sequent text")->required();

    CLI::App* eq = app.add_subcommand("eq", "decide equality in the free theory");
    eq->add_option("theory", theory_path, "theory file")->required();
    eq->add_option("--left", left, "first sequent")->required();
    eq->add_option("--right", right, "second sequent")->required();

    CLI::App* model_check =
        app.add_subcommand("model-check", "verify a model against a theory");
    model_check->add_option("theory", theory_path, "theory file")->required();
    model_check->add_option("model", model_path, "model file")->required();

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "canonical join term from a truth table");
    reconstruct->add_option("--vars", vars, "variable count")->required();
    reconstruct->add_option("--table", table, "truth table bits, variable 1 slowest")
        ->required();

    CLI::App* prove_check =
        app.add_subcommand("prove-check", "verify an equational proof tree");
    prove_check->add_option("theory", theory_path, "theory file")->required();
    prove_check->add_option("proof", proof_path, "proof file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's exit-code zoo onto the documented contract
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(theory_path, sequent);
        if (factorize->parsed()) return cmd_factorize(theory_path, sequent);
        if (normalize->parsed()) return cmd_normalize(theory_path, sequent);
        if (eq->parsed()) return cmd_eq(theory_path, left, right);
        if (model_check->parsed()) return cmd_model_check(theory_path, model_path);
        if (reconstruct->parsed()) return cmd_reconstruct(vars, table);
        if (prove_check->parsed()) return cmd_prove_check(theory_path, proof_path);
    } catch (const monk::error& e) {
        std::cerr << "error " << e.what() << "\n";
        return 2;
    }
    return 2;
}
