#pragma once

#include <string>
#include <vector>

#include "monk/error.hpp"

namespace monk {

// -------- types --------
//
// object types are finite sequences of atomic types; the empty sequence is
// the unit and juxtaposition is the tensor, so a TypeSeq is already the
// normal form modulo unit and associativity laws.

using AtomicType = std::string;
using TypeSeq = std::vector<AtomicType>;

std::string show_typeseq(const TypeSeq& ts); // "A B" or "I" when empty

// -------- signature --------

struct Constant {
    std::string name;
    TypeSeq inputs;     // possibly empty (individual constants)
    AtomicType output;  // constants produce a single atomic type
};

struct Signature {
    std::vector<AtomicType> types;
    std::vector<Constant> constants;

    bool has_type(const AtomicType& a) const;
    const Constant* find(const std::string& name) const; // null when absent
    const Constant& constant(const std::string& name) const; // UnknownConstant
};

// -------- raw terms --------
//
// raw terms are kept flattened: a Tensor node never has Tensor or Empty
// factors and always has at least two factors, so structural equality is
// equality modulo the monoid laws for the tensor.

struct RawTerm {
    enum class Kind { Empty, Var, App, Tensor };

    Kind kind = Kind::Empty;
    std::string name;           // Var name or App constant name
    std::vector<RawTerm> args;  // App arguments or Tensor factors

    static RawTerm make_empty();
    static RawTerm var(std::string n);
    static RawTerm app(std::string constant, std::vector<RawTerm> arguments);
    static RawTerm tensor(std::vector<RawTerm> factors); // flattens

    bool operator==(const RawTerm& o) const;
    bool operator!=(const RawTerm& o) const { return !(*this == o); }
};

// number of atomic slots the term occupies in a tensor product
int term_length(const RawTerm& t);

// the length-many length-one components of t, in order
std::vector<RawTerm> pieces(const RawTerm& t);

// variable occurrences in left-to-right order, with multiplicity
std::vector<std::string> occurrences(const RawTerm& t);

// simultaneous substitution t[s/x]: piece s[i] replaces every occurrence of
// variable x[i]. every s[i] must have length one. LengthMismatch otherwise.
RawTerm substitute(const RawTerm& t, const std::vector<RawTerm>& s,
                   const std::vector<std::string>& x);

// rewrites the i-th variable occurrence (left to right) to names[i];
// LengthMismatch unless names matches the occurrence count.
RawTerm relabel_occurrences(const RawTerm& t, const std::vector<std::string>& names);

// -------- sequents and formulas --------

struct ContextEntry {
    std::string var;
    AtomicType type;
    bool operator==(const ContextEntry& o) const {
        return var == o.var && type == o.type;
    }
};

using Context = std::vector<ContextEntry>;

TypeSeq context_types(const Context& ctx);
std::vector<std::string> context_vars(const Context& ctx);
bool distinct_vars(const Context& ctx);

struct Sequent {
    Context context; // distinct variable names
    RawTerm term;
    TypeSeq codomain;

    bool operator==(const Sequent& o) const {
        return context == o.context && term == o.term && codomain == o.codomain;
    }
};

struct Formula {
    Context context;
    RawTerm left;
    RawTerm right;
    TypeSeq codomain;

    Sequent left_sequent() const { return {context, left, codomain}; }
    Sequent right_sequent() const { return {context, right, codomain}; }
    bool operator==(const Formula& o) const {
        return context == o.context && left == o.left && right == o.right &&
               codomain == o.codomain;
    }
};

// positional renaming to v1, v2, ...: the canonical representative of the
// alphabetical-variance class. UnboundVariable if the term mentions a
// variable missing from the context.
Sequent canonical_rename(const Sequent& s);
Formula canonical_rename(const Formula& f);

} // namespace monk
