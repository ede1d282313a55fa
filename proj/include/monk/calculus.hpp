#pragma once

#include <optional>
#include <vector>

#include "monk/structural.hpp"
#include "monk/syntax.hpp"

namespace monk {

// -------- theories --------

struct Axiom {
    std::string name;
    Formula formula;
};

struct Theory {
    std::string name;
    Signature signature;
    RuleSet rules;
    std::vector<Axiom> axioms;

    const Axiom* find_axiom(const std::string& n) const;
};

// ContextClash / NonDerivableSide / TypeError when an axiom is ill-formed
// or has an underivable side under the theory's rules.
void validate_theory(const Theory& t);

// -------- term derivations --------
//
// one node per rule of the term calculus. every node stores its conclusion;
// check_derivation recomputes each conclusion from the premises and the
// node data and compares.

struct Derivation {
    enum class Rule {
        Variables,
        Functions,
        Substitution,
        Unit,
        Tensor,
        Weakening,
        Exchange,
        Contraction,
    };

    Rule rule = Rule::Unit;
    std::vector<Derivation> premises;
    std::string constant;   // Functions
    std::vector<int> perm;  // Exchange: conclusion ctx[j] = premise ctx[perm[j]]
    int pos = 0;            // Weakening: block start in the conclusion context
    int len = 0;            // Contraction: first block start in the premise
    Sequent conclusion;
};

// verifies every node instantiates its rule under the enabled structural
// rules and returns the root conclusion. errors: RuleDisabled,
// ArityMismatch, ContextClash, MalformedNode, UnknownConstant, TypeError.
Sequent check_derivation(const Derivation& d, const RuleSet& rules,
                         const Signature& sig);

// decision procedure: relabels the occurrences, type-checks the resulting
// purely functional skeleton, tests the occurrence function for structural
// membership, and assembles a derivation with the functional subtree under
// a chain of structural nodes. nullopt when the sequent is underivable;
// hard errors (UnknownConstant, TypeError, ArityMismatch, ContextClash)
// when it is not even well-formed over the signature.
std::optional<Derivation> elaborate(const Sequent& s, const RuleSet& rules,
                                    const Signature& sig);

// -------- equational proofs --------

struct ProofTree {
    enum class Rule {
        Axiom,
        Reflexivity,
        Symmetry,
        Transitivity,
        Substitution,
        Tensor,
        Weakening,
        Exchange,
        Contraction,
    };

    Rule rule = Rule::Reflexivity;
    std::vector<ProofTree> premises;
    std::string axiom;      // Axiom: cited axiom name
    std::vector<int> perm;  // Exchange
    int pos = 0;
    int len = 0;
    Formula conclusion;
};

// verifies the proof tree against the theory and returns the root formula.
// every intermediate formula must have both sides derivable. errors:
// RuleDisabled, UnknownAxiom, NonDerivableSide, MalformedNode, plus the
// well-formedness errors of elaborate.
Formula check_proof(const ProofTree& p, const Theory& t);

} // namespace monk
