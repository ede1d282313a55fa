#pragma once

#include <optional>
#include <vector>

#include "monk/syntax.hpp"

namespace monk {

// -------- rule sets --------

struct RuleSet {
    bool weakening = false;
    bool exchange = false;
    bool contraction = false;

    // exchange is derivable from weakening plus contraction (block form),
    // so structure data and equation gating treat it as present then.
    bool effective_exchange() const {
        return exchange || (weakening && contraction);
    }
    bool contraction_only() const {
        return contraction && !weakening && !exchange;
    }
    bool none() const { return !weakening && !exchange && !contraction; }
    bool all() const { return weakening && exchange && contraction; }
    // s extends this rule set
    bool subset_of(const RuleSet& s) const {
        return (!weakening || s.weakening) && (!exchange || s.exchange) &&
               (!contraction || s.contraction);
    }
    bool operator==(const RuleSet& o) const {
        return weakening == o.weakening && exchange == o.exchange &&
               contraction == o.contraction;
    }

    static RuleSet make_none() { return {}; }
    static RuleSet make_all() { return {true, true, true}; }
};

// -------- finite functions --------
//
// a structural term with context length m and right-hand side length n is
// recorded contravariantly as the function n -> m sending each right-hand
// position to the context position of its variable.

struct FiniteFn {
    int dom = 0; // size of the domain cardinal
    int cod = 0; // size of the codomain cardinal
    std::vector<int> map; // length dom, entries in [0, cod)

    static FiniteFn identity(int n);
    bool is_identity() const;
    bool operator==(const FiniteFn& o) const {
        return dom == o.dom && cod == o.cod && map == o.map;
    }
    bool operator!=(const FiniteFn& o) const { return !(*this == o); }
    bool operator<(const FiniteFn& o) const; // for use as map keys
};

// f : n -> m then g : m -> k, pointwise g after f. SizeMismatch otherwise.
FiniteFn compose_fn(const FiniteFn& f, const FiniteFn& g);

// block sum: acts as f on the first dom(f) points, as g shifted afterwards
FiniteFn tensor_fn(const FiniteFn& f, const FiniteFn& g);

bool is_injective(const FiniteFn& f);
bool is_surjective(const FiniteFn& f);
bool is_bijective(const FiniteFn& f);
bool is_monotone(const FiniteFn& f); // weakly increasing
bool is_permutation(const FiniteFn& f);

// -------- generator words --------
//
// a word is a composable sequence of elementary structural generators, each
// an identity-padded weakening insertion, adjacent swap, or block merge.
// the word denotes an arrow start -> (running end cardinal); evaluation
// composes the step functions in order.

struct GeneratorStep {
    enum class Kind { Weaken, Exchange, Contract };
    Kind kind;
    int pos = 0; // leftmost point touched
    int len = 1; // block length (Weaken/Contract); Exchange swaps pos,pos+1

    bool operator==(const GeneratorStep& o) const {
        return kind == o.kind && pos == o.pos && len == o.len;
    }
};

struct GeneratorWord {
    int start = 0;
    std::vector<GeneratorStep> steps;

    bool operator==(const GeneratorWord& o) const {
        return start == o.start && steps == o.steps;
    }
};

// the arrow in the category of cardinals a single step denotes, at running
// cardinal c. IndexOutOfRange if the step does not fit.
FiniteFn step_fn(const GeneratorStep& s, int c);

// composite of all step arrows. IndexOutOfRange if some step is ill-placed.
FiniteFn eval_word(const GeneratorWord& w);

// which structural rule a step consumes
RuleSet word_rules(const GeneratorWord& w);

// deterministic decomposition of a permutation into adjacent transpositions
// (stable insertion sort by target position); composing the transpositions
// in the returned order reproduces the permutation.
std::vector<int> canonical_transpositions(const std::vector<int>& perm);

// a weakening+contraction word evaluating to sigma : n -> n, built from the
// three-step swap gadget (insert, insert, merge a doubled block) tensored
// with identities for each adjacent transposition.
GeneratorWord exchange_witness(const std::vector<int>& sigma);

// decides whether f lies in the subcategory of cardinals generated by the
// rules in s, returning a word over those generators evaluating to f.
// contraction-only has no closed form and is decided by saturating the
// generator set under composition (everything stays below dom(f)).
std::optional<GeneratorWord> membership(const FiniteFn& f, const RuleSet& s);

// -------- typed structural arrows --------

struct TypedStructuralArrow {
    TypeSeq source; // length m
    TypeSeq target; // length n
    FiniteFn fn;    // n -> m; target[j] = source[fn.map[j]]

    bool operator==(const TypedStructuralArrow& o) const {
        return source == o.source && target == o.target && fn == o.fn;
    }
};

// checked constructor: ShapeMismatch unless lengths and the typing
// invariant hold.
TypedStructuralArrow make_typed_arrow(TypeSeq source, TypeSeq target, FiniteFn fn);

// a then b. ShapeMismatch unless a.target == b.source.
TypedStructuralArrow compose_typed(const TypedStructuralArrow& a,
                                   const TypedStructuralArrow& b);

// typed membership: the underlying function must lie in the subcategory and
// the typing invariant must hold (the invariant forces every intermediate
// stage of any witness word to be well-typed, so nothing further is needed).
std::optional<GeneratorWord> typed_membership(const TypedStructuralArrow& a,
                                              const RuleSet& s);

// -------- structural normal form --------
//
// weakening factor, then contraction factor, then exchange factor. the
// weakening factor keeps the effectively occurring positions, the
// contraction factor repeats each kept position consecutively by its
// multiplicity, and the exchange factor is the unique bijection preserving
// the relative order inside each block of copies.

struct StructuralNormalForm {
    TypedStructuralArrow weakening;
    TypedStructuralArrow contraction;
    TypedStructuralArrow exchange;
};

// pre: membership(a.fn, s) holds. Unsupported for contraction-only s;
// NotInCategory when membership fails.
StructuralNormalForm structural_normal_form(const TypedStructuralArrow& a,
                                            const RuleSet& s);

} // namespace monk
