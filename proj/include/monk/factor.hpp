#pragma once

#include "monk/calculus.hpp"

namespace monk {

// -------- structural/functional factorisation --------
//
// every derivable sequent factors uniquely as a structural arrow (which
// discards, repeats and reorders the context) followed by a purely
// functional sequent in which every variable occurs exactly once, in order.

struct Factorisation {
    TypedStructuralArrow structural; // context types -> occurrence types
    Sequent functional;              // canonical variables v1, v2, ...
};

// errors: NotDerivable when s is not derivable under the rules, plus the
// well-formedness errors of elaborate.
Factorisation factorize(const Sequent& s, const RuleSet& rules,
                        const Signature& sig);

// the structural factor rendered as a sequent over the original context:
// x : A |- (variable picked by the occurrence function at each position)
Sequent structural_factor_sequent(const Sequent& s, const Factorisation& f);

// substitutes the structural factor's variables into the functional factor;
// equals canonical_rename(s) for the factorisation of s.
Sequent recompose(const Sequent& s, const Factorisation& f);

// replaces a checked derivation by a substitution-free one with the same
// conclusion (up to alphabetical variance): single function applications
// migrate through tensors instead of being composed in.
Derivation eliminate_substitution(const Derivation& d, const RuleSet& rules,
                                  const Signature& sig);

// -------- layered functional normal form --------
//
// a purely functional sequent normalizes to a composition of layers, each a
// tensor of identity strands and single function applications, with
// shallower branches padded by identity layers at the domain end so that
// applications align at the codomain end.

struct Slot {
    enum class Kind { Identity, Apply };
    Kind kind = Kind::Identity;
    AtomicType type;      // Identity: the atom carried through
    std::string constant; // Apply: the applied constant

    bool operator==(const Slot& o) const {
        return kind == o.kind && type == o.type && constant == o.constant;
    }
};

struct LayeredForm {
    std::vector<std::vector<Slot>> layers; // domain end first

    bool operator==(const LayeredForm& o) const { return layers == o.layers; }
};

// errors: NotPurelyFunctional unless the context variables occur exactly
// once each, in context order.
LayeredForm functional_normal_form(const Sequent& phi);

// rebuilds the term a layered form denotes over context variables; inverse
// of functional_normal_form on canonical sequents.
Sequent layered_to_sequent(const LayeredForm& lf, const Context& ctx,
                           const Signature& sig);

// -------- word problem --------
//
// equality in the free theory: equal structural factors and equal
// functional factors up to alphabetical variance. pre: both derivable;
// SignatureMismatch unless context types and codomains agree.
bool term_eq(const Sequent& s1, const Sequent& s2, const RuleSet& rules,
             const Signature& sig);

} // namespace monk
