#pragma once

#include <string>
#include <vector>

#include "monk/calculus.hpp"
#include "monk/factor.hpp"
#include "monk/semantics.hpp"
#include "monk/truthvalues.hpp"

namespace monk {

// every serialized artifact opens with a versioned header line
inline const char* const theory_header = "kernel-theory 1";
inline const char* const model_header = "kernel-model 1";
inline const char* const derivation_header = "kernel-derivation 1";
inline const char* const proof_header = "kernel-proof 1";
inline const char* const normal_header = "kernel-normal 1";
inline const char* const report_header = "kernel-report 1";

// -------- printing --------

std::string show_term(const RawTerm& t);
std::string show_context(const Context& ctx); // "x:G y:G", "" when empty
std::string show_sequent(const Sequent& s);   // "x:G |- mul(x,x) : G"
std::string show_formula(const Formula& f);   // "x:G |- x = x : G"
std::string show_rule_set(const RuleSet& r);  // "none" | "all" | rule names
std::string show_fn(const FiniteFn& f);       // "[1 0] : 2 -> 2"
std::string show_typed_arrow(const TypedStructuralArrow& a); // "G G => G [0]"

std::string show_derivation(const Derivation& d); // versioned tree dump
std::string show_proof(const ProofTree& p);

// the normalize rendering: canonical sequent, the three structural pieces,
// the functional factor and its layers
struct NormalDump {
    Sequent sequent;
    TypedStructuralArrow weakening, contraction, exchange;
    Sequent functional;
    LayeredForm layers;
};

std::string show_layered(const LayeredForm& lf);
std::string show_normal(const NormalDump& n);

std::string show_canonical(const CanonicalTerm& t); // "x1 v ~(x2 v x3)"
std::string show_report(const StructureReport& r);

// -------- parsing --------
//
// all parsers throw ParseError on malformed input; shape errors from the
// kernel constructors pass through.

RawTerm parse_term(const std::string& text);
Sequent parse_sequent(const std::string& text);
Formula parse_formula(const std::string& text);
FiniteFn parse_fn(const std::string& text);
TypedStructuralArrow parse_typed_arrow(const std::string& text);

// the theory DSL; syntactic only — run validate_theory for the semantic
// checks. axiom codomains are inferred from the sides, which must agree.
Theory parse_theory(const std::string& text);

// model files need the signature to size the payloads; pi/tau/delta lines
// may omit type names only in a single-typed signature, and a trailing
// `symmetric true` fills every missing tau with the index swap.
Prestructure parse_model(const std::string& text, const Signature& sig);

Derivation parse_derivation(const std::string& text);
ProofTree parse_proof(const std::string& text);
NormalDump parse_normal(const std::string& text);

} // namespace monk
