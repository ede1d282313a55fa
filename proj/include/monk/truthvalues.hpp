#pragma once

#include <optional>
#include <vector>

#include "monk/syntax.hpp"

namespace monk {

// -------- truth tables --------
//
// a boolean function of n variables, tabulated over all 2^n assignments in
// lexicographic order with variable 1 as the slowest bit.

struct TruthTable {
    int arity = 0;
    std::vector<bool> values; // size 2^arity

    bool operator==(const TruthTable& o) const {
        return arity == o.arity && values == o.values;
    }
    bool operator!=(const TruthTable& o) const { return !(*this == o); }
};

// does the function genuinely depend on variable i (1-based)?
bool depends_on(const TruthTable& t, int i);

// -------- canonical join terms --------
//
// the normal form for the two-element model of commutative monoids with an
// involution and an absorbing element: bottom, negated bottom, or a join of
// signed variables and negated subterms. every variable occurs exactly
// once; a subterm has at least two factors (otherwise its negation would
// reduce) and factors are ordered by weight, the least variable index.

struct CanonicalTerm {
    enum class Kind { Bottom, NegBottom, Join };

    struct Atom {
        int index = 0; // 1-based variable index
        bool negated = false;
        bool operator==(const Atom& o) const {
            return index == o.index && negated == o.negated;
        }
    };

    Kind kind = Kind::Bottom;
    std::vector<Atom> atoms;              // sorted by index
    std::vector<CanonicalTerm> subterms;  // sorted by weight

    int weight() const; // least variable index (Join only)
    int factor_count() const { return (int)(atoms.size() + subterms.size()); }
    std::vector<int> variables() const; // sorted, with duplicates collapsed

    bool operator==(const CanonicalTerm& o) const;
    bool operator!=(const CanonicalTerm& o) const { return !(*this == o); }
};

// shape invariants: factor ordering, distinct variables, subterm widths.
// as_subterm additionally demands >= 2 factors and forbids bottoms.
bool well_formed(const CanonicalTerm& t, bool as_subterm = false);

// pointwise evaluation at the given arity. IndexOutOfRange when the term
// mentions a variable beyond it.
TruthTable evaluate(const CanonicalTerm& t, int arity);

// the raw term over constants or/neg/bot and variables x1..xn
RawTerm canonical_to_raw(const CanonicalTerm& t);

// all inclusion-minimal variable sets V (1-based, each sorted) such that
// some assignment to V forces the function to 1 whatever the rest does
std::vector<std::vector<int>> minimal_sufficient_sets(const TruthTable& t);

// dependent variables partitioned by co-membership in a minimal sufficient
// set, transitively closed; sorted classes in order of least element
std::vector<std::vector<int>> variable_classes(const TruthTable& t);

// -------- reconstruction --------

struct Reconstruction {
    CanonicalTerm term;
    std::vector<int> dummies; // variables the function ignores, ascending
};

// recovers the unique canonical term (plus dummy set) evaluating to the
// table, when one exists; certified by re-evaluation. nullopt for tables
// beyond the reach of terms reading each variable once (xor fails, while
// conjunction sneaks in through the involution).
std::optional<Reconstruction> reconstruct(const TruthTable& t);

} // namespace monk
