#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "monk/calculus.hpp"

namespace monk {

using Scalar = boost::multiprecision::cpp_int;

// -------- semirings --------
//
// exact scalar arithmetic for matrix targets: booleans under or/and,
// arbitrary-precision integers, or integers modulo m. no floating point
// anywhere, so arrow equality is exact.

struct Semiring {
    enum class Kind { Booleans, Integers, Mod };
    Kind kind = Kind::Integers;
    Scalar modulus = 0; // Mod only, >= 2

    Scalar zero() const;
    Scalar one() const;
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar canon(const Scalar& a) const; // canonical representative

    bool operator==(const Semiring& o) const {
        return kind == o.kind && modulus == o.modulus;
    }

    static Semiring booleans();
    static Semiring integers();
    static Semiring mod(Scalar m); // ShapeMismatch unless m >= 2
};

// -------- concrete arrows --------
//
// two strict monoidal target flavours share one arrow struct:
//   FnTable  functions between finite products, fully tabulated; a point of
//            a product carrier is encoded mixed-radix, first factor slowest
//   Matrix   cod x dom matrices over a semiring, row major; composition is
//            matrix product, tensor is the Kronecker product, again with
//            the first factor slow

struct ConcreteArrow {
    enum class Kind { FnTable, Matrix };

    Kind kind = Kind::FnTable;
    long long dom = 0;
    long long cod = 0;
    std::vector<long long> table; // FnTable: length dom, entries in [0, cod)
    Semiring rig;                 // Matrix only
    std::vector<Scalar> mat;      // Matrix: cod*dom entries, row major

    bool operator==(const ConcreteArrow& o) const;
    bool operator!=(const ConcreteArrow& o) const { return !(*this == o); }
};

// checked constructors (ShapeMismatch on bad payloads)
ConcreteArrow fn_arrow(long long dom, long long cod, std::vector<long long> table);
ConcreteArrow mat_arrow(Semiring rig, long long dom, long long cod,
                        std::vector<Scalar> entries);
ConcreteArrow identity_arrow(ConcreteArrow::Kind k, const Semiring& rig,
                             long long n);

// a then b (ShapeMismatch unless b.dom == a.cod and the kinds/rigs agree)
ConcreteArrow compose_arrow(const ConcreteArrow& a, const ConcreteArrow& b);
ConcreteArrow tensor_arrow(const ConcreteArrow& a, const ConcreteArrow& b);

// index of the first point/entry where the arrows differ; -1 when equal.
// ShapeMismatch when the shapes differ.
long long first_difference(const ConcreteArrow& a, const ConcreteArrow& b);

// cartesian structural maps on set carriers
ConcreteArrow discard_table(long long n);                 // n -> 1
ConcreteArrow swap_table(long long nb, long long na);     // (b,a) -> (a,b)
ConcreteArrow copy_table(long long n);                    // i -> (i,i)
// the matrix of a tabulated function: column i carries a single one
ConcreteArrow fn_to_matrix(const Semiring& rig, const ConcreteArrow& f);

// -------- prestructures --------
//
// an interpretation of a signature in one of the targets: a carrier size
// (or free rank) per atomic type, an arrow per constant, and atomic
// structural arrows for exactly the enabled structural rules. exchange
// is considered available also when weakening and contraction both are,
// since the swap is then expressible.

using TypePair = std::pair<AtomicType, AtomicType>;

struct Prestructure {
    std::string name;
    Signature sig;
    ConcreteArrow::Kind kind = ConcreteArrow::Kind::FnTable;
    Semiring rig;
    std::map<AtomicType, long long> type_map;
    std::map<std::string, ConcreteArrow> fun_map;
    std::map<AtomicType, ConcreteArrow> pi;    // |A| -> 1
    std::map<TypePair, ConcreteArrow> tau;     // |B||A| -> |A||B|
    std::map<AtomicType, ConcreteArrow> delta; // |A| -> |A||A|

    long long size_of(const TypeSeq& ts) const; // product of carrier sizes
    ConcreteArrow id_on(const TypeSeq& ts) const;
    const ConcreteArrow& arrow_of(const std::string& constant) const;
};

// shape validation against the signature and enabled rules: every type
// mapped, every constant arrow matching its arity, structural arrows
// present with the right shapes exactly where the rules demand them.
// ShapeMismatch / TypeError on violation.
void validate_prestructure(const Prestructure& m, const RuleSet& rules);

// -------- completed structural arrows --------

// |A| -> 1, the tensor of the atomic discards. RuleDisabled without weakening.
ConcreteArrow complete_pi(const Prestructure& m, const RuleSet& rules,
                          const TypeSeq& a);

// |sigma A| -> |A| along the canonical adjacent-transposition decomposition.
// RuleDisabled when sigma is non-trivial without exchange being available.
ConcreteArrow complete_exchange(const Prestructure& m, const RuleSet& rules,
                                const TypeSeq& a, const std::vector<int>& sigma);

// |A| -> |A||A|: atomic copies followed by the interleave-to-blocks swap.
// RuleDisabled without contraction; Unsupported for sequences of length
// >= 2 when no swap is available to rearrange the copies.
ConcreteArrow complete_delta(const Prestructure& m, const RuleSet& rules,
                             const TypeSeq& a);

// -------- structure verification --------

struct ReportEntry {
    std::string id;       // structural equation number, axiom name, or note id
    std::string instance; // instantiation data (constants / atomic types)
    bool pass = true;
    long long witness = -1; // first differing point/entry when failing

    bool operator<(const ReportEntry& o) const {
        if (id != o.id) return id < o.id;
        return instance < o.instance;
    }
};

struct StructureReport {
    std::vector<ReportEntry> entries;
    bool verified() const;
};

// evaluates every applicable instance of the ten structural compatibility
// equations (numbered 27-36 in the report): naturality of discard, copy and
// swap against every constant, the Yang-Baxter and involution laws of the
// swap, and the pairwise compatibilities of the three structural arrows.
// an equation applies only when the rules it mentions are all enabled.
// Unsupported when contraction is the only rule (no swap can be completed;
// use well_definedness_sample instead).
StructureReport check_structure(const Prestructure& m, const RuleSet& rules);

// contraction-only fallback: enumerates pairs of distinct derivations of
// the same sequent (single-type contexts, bounded depth) and compares
// their interpretations pointwise.
StructureReport well_definedness_sample(const Prestructure& m,
                                        const RuleSet& rules, int depth = 4);

// -------- interpretation --------

// the arrow denoted by a checked derivation: variables and the unit become
// identities, function nodes tensor their premises into the constant's
// arrow, substitution composes, and the structural rules precompose with
// the completed discard/swap/copy arrows. `verify` reruns check_structure
// (or the sampler) first and throws StructureUnverified on failure.
ConcreteArrow interpret_derivation(const Derivation& d, const Prestructure& m,
                                   const RuleSet& rules, bool verify = true);

// elaborates s first; NotDerivable when the sequent has no derivation.
ConcreteArrow interpret(const Sequent& s, const Prestructure& m,
                        const RuleSet& rules, bool verify = true);

// exact equality of the interpretations of the two sides
bool satisfies(const Prestructure& m, const Formula& phi, const RuleSet& rules,
               bool verify = true);

// structure check (or sampler) followed by one entry per theory axiom
StructureReport model_check(const Prestructure& m, const Theory& t);

// one entry per constant and per shared structural arrow, checking that the
// given type-indexed components commute with the two interpretations
StructureReport check_morphism(const Prestructure& m, const Prestructure& n,
                               const RuleSet& rules,
                               const std::map<AtomicType, ConcreteArrow>& h);

} // namespace monk
