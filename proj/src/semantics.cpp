#include "monk/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace monk {

// -------- semirings --------

Scalar Semiring::zero() const { return Scalar(0); }

Scalar Semiring::one() const { return Scalar(1); }

Scalar Semiring::canon(const Scalar& a) const {
    switch (kind) {
    case Kind::Booleans: return a == 0 ? Scalar(0) : Scalar(1);
    case Kind::Integers: return a;
    case Kind::Mod: {
        Scalar r = a % modulus;
        if (r < 0) r += modulus;
        return r;
    }
    }
    fail("ShapeMismatch", "unknown semiring kind");
}

Scalar Semiring::add(const Scalar& a, const Scalar& b) const {
    if (kind == Kind::Booleans) return (a != 0 || b != 0) ? Scalar(1) : Scalar(0);
    return canon(a + b);
}

Scalar Semiring::mul(const Scalar& a, const Scalar& b) const {
    if (kind == Kind::Booleans) return (a != 0 && b != 0) ? Scalar(1) : Scalar(0);
    return canon(a * b);
}

Semiring Semiring::booleans() {
    Semiring s;
    s.kind = Kind::Booleans;
    return s;
}

Semiring Semiring::integers() { return Semiring{}; }

Semiring Semiring::mod(Scalar m) {
    if (m < 2) fail("ShapeMismatch", "modulus must be at least 2");
    Semiring s;
    s.kind = Kind::Mod;
    s.modulus = std::move(m);
    return s;
}

// -------- concrete arrows --------

bool ConcreteArrow::operator==(const ConcreteArrow& o) const {
    if (kind != o.kind || dom != o.dom || cod != o.cod) return false;
    if (kind == Kind::FnTable) return table == o.table;
    return rig == o.rig && mat == o.mat;
}

ConcreteArrow fn_arrow(long long dom, long long cod, std::vector<long long> table) {
    if (dom < 0 || cod < 0 || (long long)table.size() != dom)
        fail("ShapeMismatch", "function table has the wrong length");
    for (long long v : table)
        if (v < 0 || v >= cod) fail("ShapeMismatch", "table entry out of range");
    ConcreteArrow a;
    a.kind = ConcreteArrow::Kind::FnTable;
    a.dom = dom;
    a.cod = cod;
    a.table = std::move(table);
    return a;
}

ConcreteArrow mat_arrow(Semiring rig, long long dom, long long cod,
                        std::vector<Scalar> entries) {
    if (dom < 0 || cod < 0 || (long long)entries.size() != dom * cod)
        fail("ShapeMismatch", "matrix has the wrong number of entries");
    for (Scalar& e : entries) e = rig.canon(e);
    ConcreteArrow a;
    a.kind = ConcreteArrow::Kind::Matrix;
    a.dom = dom;
    a.cod = cod;
    a.rig = std::move(rig);
    a.mat = std::move(entries);
    return a;
}

ConcreteArrow identity_arrow(ConcreteArrow::Kind k, const Semiring& rig,
                             long long n) {
    if (k == ConcreteArrow::Kind::FnTable) {
        std::vector<long long> t(n);
        for (long long i = 0; i < n; ++i) t[i] = i;
        return fn_arrow(n, n, std::move(t));
    }
    std::vector<Scalar> e(n * n, Scalar(0));
    for (long long i = 0; i < n; ++i) e[i * n + i] = rig.one();
    return mat_arrow(rig, n, n, std::move(e));
}

ConcreteArrow compose_arrow(const ConcreteArrow& a, const ConcreteArrow& b) {
    if (a.kind != b.kind) fail("ShapeMismatch", "mixed arrow kinds");
    if (a.cod != b.dom) fail("ShapeMismatch", "composition shape mismatch");
    if (a.kind == ConcreteArrow::Kind::FnTable) {
        std::vector<long long> t(a.dom);
        for (long long i = 0; i < a.dom; ++i) t[i] = b.table[a.table[i]];
        return fn_arrow(a.dom, b.cod, std::move(t));
    }
    if (!(a.rig == b.rig)) fail("ShapeMismatch", "mixed semirings");
    std::vector<Scalar> e(b.cod * a.dom, a.rig.zero());
    for (long long r = 0; r < b.cod; ++r)
        for (long long k = 0; k < a.cod; ++k) {
            const Scalar& brk = b.mat[r * b.dom + k];
            if (brk == 0) continue;
            for (long long c = 0; c < a.dom; ++c)
                e[r * a.dom + c] =
                    a.rig.add(e[r * a.dom + c], a.rig.mul(brk, a.mat[k * a.dom + c]));
        }
    return mat_arrow(a.rig, a.dom, b.cod, std::move(e));
}

ConcreteArrow tensor_arrow(const ConcreteArrow& a, const ConcreteArrow& b) {
    if (a.kind != b.kind) fail("ShapeMismatch", "mixed arrow kinds");
    if (a.kind == ConcreteArrow::Kind::FnTable) {
        std::vector<long long> t(a.dom * b.dom);
        for (long long i = 0; i < a.dom; ++i)
            for (long long j = 0; j < b.dom; ++j)
                t[i * b.dom + j] = a.table[i] * b.cod + b.table[j];
        return fn_arrow(a.dom * b.dom, a.cod * b.cod, std::move(t));
    }
    if (!(a.rig == b.rig)) fail("ShapeMismatch", "mixed semirings");
    std::vector<Scalar> e(a.cod * b.cod * a.dom * b.dom, a.rig.zero());
    long long dom = a.dom * b.dom;
    for (long long r1 = 0; r1 < a.cod; ++r1)
        for (long long r2 = 0; r2 < b.cod; ++r2)
            for (long long c1 = 0; c1 < a.dom; ++c1)
                for (long long c2 = 0; c2 < b.dom; ++c2)
                    e[(r1 * b.cod + r2) * dom + (c1 * b.dom + c2)] =
                        a.rig.mul(a.mat[r1 * a.dom + c1], b.mat[r2 * b.dom + c2]);
    return mat_arrow(a.rig, dom, a.cod * b.cod, std::move(e));
}

long long first_difference(const ConcreteArrow& a, const ConcreteArrow& b) {
    if (a.kind != b.kind || a.dom != b.dom || a.cod != b.cod)
        fail("ShapeMismatch", "comparing arrows of different shapes");
    if (a.kind == ConcreteArrow::Kind::FnTable) {
        for (long long i = 0; i < a.dom; ++i)
            if (a.table[i] != b.table[i]) return i;
        return -1;
    }
    if (!(a.rig == b.rig)) fail("ShapeMismatch", "comparing over different semirings");
    for (long long i = 0; i < (long long)a.mat.size(); ++i)
        if (a.mat[i] != b.mat[i]) return i;
    return -1;
}

ConcreteArrow discard_table(long long n) {
    return fn_arrow(n, 1, std::vector<long long>(n, 0));
}

ConcreteArrow swap_table(long long nb, long long na) {
    std::vector<long long> t(nb * na);
    for (long long b = 0; b < nb; ++b)
        for (long long a = 0; a < na; ++a) t[b * na + a] = a * nb + b;
    return fn_arrow(nb * na, na * nb, std::move(t));
}

ConcreteArrow copy_table(long long n) {
    std::vector<long long> t(n);
    for (long long i = 0; i < n; ++i) t[i] = i * n + i;
    return fn_arrow(n, n * n, std::move(t));
}

ConcreteArrow fn_to_matrix(const Semiring& rig, const ConcreteArrow& f) {
    if (f.kind != ConcreteArrow::Kind::FnTable)
        fail("ShapeMismatch", "expected a function table");
    std::vector<Scalar> e(f.cod * f.dom, rig.zero());
    for (long long i = 0; i < f.dom; ++i) e[f.table[i] * f.dom + i] = rig.one();
    return mat_arrow(rig, f.dom, f.cod, std::move(e));
}

// -------- prestructures --------

long long Prestructure::size_of(const TypeSeq& ts) const {
    long long n = 1;
    for (const auto& a : ts) {
        auto it = type_map.find(a);
        if (it == type_map.end()) fail("TypeError", "no carrier for type " + a);
        n *= it->second;
    }
    return n;
}

ConcreteArrow Prestructure::id_on(const TypeSeq& ts) const {
    return identity_arrow(kind, rig, size_of(ts));
}

const ConcreteArrow& Prestructure::arrow_of(const std::string& constant) const {
    auto it = fun_map.find(constant);
    if (it == fun_map.end()) fail("UnknownConstant", "no arrow for " + constant);
    return it->second;
}

namespace {

void check_arrow_frame(const Prestructure& m, const ConcreteArrow& a,
                       long long dom, long long cod, const std::string& what) {
    if (a.kind != m.kind) fail("ShapeMismatch", what + ": wrong target kind");
    if (a.kind == ConcreteArrow::Kind::Matrix && !(a.rig == m.rig))
        fail("ShapeMismatch", what + ": wrong semiring");
    if (a.dom != dom || a.cod != cod)
        fail("ShapeMismatch", what + ": wrong shape");
}

} // namespace

void validate_prestructure(const Prestructure& m, const RuleSet& rules) {
    for (const auto& tname : m.sig.types) {
        auto it = m.type_map.find(tname);
        if (it == m.type_map.end())
            fail("TypeError", "no carrier for type " + tname);
        if (it->second < 1 && m.kind == ConcreteArrow::Kind::FnTable)
            fail("ShapeMismatch", "empty carrier for type " + tname);
        if (it->second < 0) fail("ShapeMismatch", "negative size for " + tname);
    }
    for (const auto& c : m.sig.constants) {
        auto it = m.fun_map.find(c.name);
        if (it == m.fun_map.end())
            fail("UnknownConstant", "no arrow for constant " + c.name);
        check_arrow_frame(m, it->second, m.size_of(c.inputs),
                          m.size_of({c.output}), "constant " + c.name);
    }
    bool want_tau = rules.effective_exchange();
    if (rules.weakening) {
        for (const auto& a : m.sig.types) {
            auto it = m.pi.find(a);
            if (it == m.pi.end()) fail("ShapeMismatch", "missing pi for " + a);
            check_arrow_frame(m, it->second, m.size_of({a}), 1, "pi " + a);
        }
    } else if (!m.pi.empty()) {
        fail("ShapeMismatch", "pi given but weakening is disabled");
    }
    if (want_tau) {
        for (const auto& a : m.sig.types)
            for (const auto& b : m.sig.types) {
                auto it = m.tau.find({a, b});
                if (it == m.tau.end())
                    fail("ShapeMismatch", "missing tau for " + a + "," + b);
                long long na = m.size_of({a}), nb = m.size_of({b});
                check_arrow_frame(m, it->second, nb * na, na * nb,
                                  "tau " + a + "," + b);
            }
    } else if (!m.tau.empty()) {
        fail("ShapeMismatch", "tau given but exchange is not available");
    }
    if (rules.contraction) {
        for (const auto& a : m.sig.types) {
            auto it = m.delta.find(a);
            if (it == m.delta.end()) fail("ShapeMismatch", "missing delta for " + a);
            long long n = m.size_of({a});
            check_arrow_frame(m, it->second, n, n * n, "delta " + a);
        }
    } else if (!m.delta.empty()) {
        fail("ShapeMismatch", "delta given but contraction is disabled");
    }
}

// -------- completed structural arrows --------

ConcreteArrow complete_pi(const Prestructure& m, const RuleSet& rules,
                          const TypeSeq& a) {
    if (!rules.weakening) fail("RuleDisabled", "weakening is not enabled");
    ConcreteArrow out = identity_arrow(m.kind, m.rig, 1);
    for (const auto& t : a) out = tensor_arrow(out, m.pi.at(t));
    return out;
}

ConcreteArrow complete_exchange(const Prestructure& m, const RuleSet& rules,
                                const TypeSeq& a, const std::vector<int>& sigma) {
    int n = (int)a.size();
    if ((int)sigma.size() != n) fail("ShapeMismatch", "permutation length mismatch");
    {
        std::vector<bool> hit(n, false);
        for (int v : sigma) {
            if (v < 0 || v >= n || hit[v]) fail("ShapeMismatch", "not a permutation");
            hit[v] = true;
        }
    }
    auto ts = canonical_transpositions(sigma);
    if (ts.empty()) return m.id_on(a);
    if (!rules.effective_exchange())
        fail("RuleDisabled", "exchange is not available");
    TypeSeq running;
    for (int j = 0; j < n; ++j) running.push_back(a[sigma[j]]);
    ConcreteArrow out = m.id_on(running);
    for (int p : ts) {
        TypeSeq left(running.begin(), running.begin() + p);
        TypeSeq right(running.begin() + p + 2, running.end());
        const ConcreteArrow& t = m.tau.at({running[p + 1], running[p]});
        ConcreteArrow step =
            tensor_arrow(tensor_arrow(m.id_on(left), t), m.id_on(right));
        out = compose_arrow(out, step);
        std::swap(running[p], running[p + 1]);
    }
    if (running != a) fail("ShapeMismatch", "swap schedule failed to sort");
    return out;
}

ConcreteArrow complete_delta(const Prestructure& m, const RuleSet& rules,
                             const TypeSeq& a) {
    if (!rules.contraction) fail("RuleDisabled", "contraction is not enabled");
    int n = (int)a.size();
    if (n == 0) return identity_arrow(m.kind, m.rig, 1);
    if (n == 1) return m.delta.at(a[0]);
    if (!rules.effective_exchange())
        fail("Unsupported",
             "copying a sequence needs a swap to rearrange the copies");
    ConcreteArrow core = identity_arrow(m.kind, m.rig, 1);
    for (const auto& t : a) core = tensor_arrow(core, m.delta.at(t));
    // core lands in A1 A1 A2 A2 ...; permute to A1 ... An A1 ... An
    TypeSeq doubled(a);
    doubled.insert(doubled.end(), a.begin(), a.end());
    std::vector<int> sigma(2 * n);
    for (int j = 0; j < 2 * n; ++j) sigma[j] = j < n ? 2 * j : 2 * (j - n) + 1;
    return compose_arrow(core, complete_exchange(m, rules, doubled, sigma));
}

// -------- structure verification --------

bool StructureReport::verified() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

namespace {

ReportEntry compare_entry(std::string id, std::string instance,
                          const ConcreteArrow& lhs, const ConcreteArrow& rhs) {
    long long w = first_difference(lhs, rhs);
    return ReportEntry{std::move(id), std::move(instance), w < 0, w};
}

} // namespace

StructureReport check_structure(const Prestructure& m, const RuleSet& rules) {
    validate_prestructure(m, rules);
    if (rules.contraction_only())
        fail("Unsupported",
             "structure equations need a rule besides contraction; "
             "use the well-definedness sampler");
    StructureReport rep;
    bool ex = rules.effective_exchange();
    const auto& types = m.sig.types;

    auto tau_of = [&](const AtomicType& a, const AtomicType& b) {
        return m.tau.at({a, b}); // |b||a| -> |a||b|
    };

    for (const auto& c : m.sig.constants) {
        const ConcreteArrow& f = m.arrow_of(c.name);
        if (rules.weakening) {
            ConcreteArrow lhs = compose_arrow(f, m.pi.at(c.output));
            ConcreteArrow rhs = complete_pi(m, rules, c.inputs);
            rep.entries.push_back(compare_entry("27", c.name, lhs, rhs));
        }
        if (rules.contraction) {
            ConcreteArrow lhs = compose_arrow(f, m.delta.at(c.output));
            ConcreteArrow rhs = compose_arrow(complete_delta(m, rules, c.inputs),
                                              tensor_arrow(f, f));
            rep.entries.push_back(compare_entry("28", c.name, lhs, rhs));
        }
        if (ex) {
            for (const auto& t : types) {
                ConcreteArrow idt = m.id_on({t});
                ConcreteArrow lhs =
                    compose_arrow(tensor_arrow(f, idt), tau_of(t, c.output));
                // rotate the lone type from the back to the front
                TypeSeq rotated;
                rotated.push_back(t);
                rotated.insert(rotated.end(), c.inputs.begin(), c.inputs.end());
                std::vector<int> sigma((int)rotated.size());
                for (size_t j = 0; j + 1 < rotated.size(); ++j)
                    sigma[j] = (int)j + 1;
                if (!rotated.empty()) sigma[rotated.size() - 1] = 0;
                ConcreteArrow rhs =
                    compose_arrow(complete_exchange(m, rules, rotated, sigma),
                                  tensor_arrow(idt, f));
                rep.entries.push_back(
                    compare_entry("29", c.name + "," + t, lhs, rhs));
            }
        }
    }

    if (ex) {
        for (const auto& a : types)
            for (const auto& b : types) {
                for (const auto& c : types) {
                    ConcreteArrow ida = m.id_on({a});
                    ConcreteArrow idb = m.id_on({b});
                    ConcreteArrow idc = m.id_on({c});
                    ConcreteArrow lhs = compose_arrow(
                        compose_arrow(tensor_arrow(tau_of(b, c), ida),
                                      tensor_arrow(idb, tau_of(a, c))),
                        tensor_arrow(tau_of(a, b), idc));
                    ConcreteArrow rhs = compose_arrow(
                        compose_arrow(tensor_arrow(idc, tau_of(a, b)),
                                      tensor_arrow(tau_of(a, c), idb)),
                        tensor_arrow(ida, tau_of(b, c)));
                    rep.entries.push_back(
                        compare_entry("30", a + "," + b + "," + c, lhs, rhs));
                }
                ConcreteArrow lhs = compose_arrow(tau_of(a, b), tau_of(b, a));
                ConcreteArrow rhs = m.id_on({b, a});
                rep.entries.push_back(compare_entry("31", a + "," + b, lhs, rhs));
                if (rules.weakening) {
                    ConcreteArrow l32 = compose_arrow(
                        tau_of(a, b), tensor_arrow(m.pi.at(a), m.id_on({b})));
                    ConcreteArrow r32 = tensor_arrow(m.id_on({b}), m.pi.at(a));
                    rep.entries.push_back(
                        compare_entry("32", a + "," + b, l32, r32));
                }
                if (rules.contraction) {
                    ConcreteArrow l33 = compose_arrow(
                        tau_of(a, b), tensor_arrow(m.id_on({a}), m.delta.at(b)));
                    ConcreteArrow r33 = compose_arrow(
                        compose_arrow(
                            tensor_arrow(m.delta.at(b), m.id_on({a})),
                            tensor_arrow(m.id_on({b}), tau_of(a, b))),
                        tensor_arrow(tau_of(a, b), m.id_on({b})));
                    rep.entries.push_back(
                        compare_entry("33", a + "," + b, l33, r33));
                }
            }
    }

    for (const auto& a : types) {
        ConcreteArrow ida = m.id_on({a});
        if (rules.weakening && rules.contraction) {
            ConcreteArrow lhs = compose_arrow(m.delta.at(a),
                                              tensor_arrow(ida, m.pi.at(a)));
            rep.entries.push_back(compare_entry("34", a, lhs, ida));
        }
        if (rules.contraction && ex) {
            ConcreteArrow lhs = compose_arrow(m.delta.at(a), tau_of(a, a));
            rep.entries.push_back(compare_entry("35", a, lhs, m.delta.at(a)));
        }
        if (rules.contraction) {
            ConcreteArrow lhs = compose_arrow(m.delta.at(a),
                                              tensor_arrow(ida, m.delta.at(a)));
            ConcreteArrow rhs = compose_arrow(m.delta.at(a),
                                              tensor_arrow(m.delta.at(a), ida));
            rep.entries.push_back(compare_entry("36", a, lhs, rhs));
        }
    }

    std::sort(rep.entries.begin(), rep.entries.end());
    return rep;
}

// -------- interpretation --------

namespace {

ConcreteArrow interp(const Derivation& d, const Prestructure& m,
                     const RuleSet& rules) {
    switch (d.rule) {
    case Derivation::Rule::Variables:
        return m.id_on({d.conclusion.context[0].type});
    case Derivation::Rule::Unit:
        return identity_arrow(m.kind, m.rig, 1);
    case Derivation::Rule::Functions: {
        ConcreteArrow args = identity_arrow(m.kind, m.rig, 1);
        for (const auto& p : d.premises)
            args = tensor_arrow(args, interp(p, m, rules));
        return compose_arrow(args, m.arrow_of(d.constant));
    }
    case Derivation::Rule::Substitution:
        return compose_arrow(interp(d.premises[1], m, rules),
                             interp(d.premises[0], m, rules));
    case Derivation::Rule::Tensor:
        return tensor_arrow(interp(d.premises[0], m, rules),
                            interp(d.premises[1], m, rules));
    case Derivation::Rule::Weakening: {
        const TypeSeq all = context_types(d.conclusion.context);
        TypeSeq left(all.begin(), all.begin() + d.pos);
        TypeSeq block(all.begin() + d.pos, all.begin() + d.pos + d.len);
        TypeSeq right(all.begin() + d.pos + d.len, all.end());
        ConcreteArrow drop = tensor_arrow(
            tensor_arrow(m.id_on(left), complete_pi(m, rules, block)),
            m.id_on(right));
        return compose_arrow(drop, interp(d.premises[0], m, rules));
    }
    case Derivation::Rule::Exchange: {
        const TypeSeq prem = context_types(d.premises[0].conclusion.context);
        ConcreteArrow sw = complete_exchange(m, rules, prem, d.perm);
        return compose_arrow(sw, interp(d.premises[0], m, rules));
    }
    case Derivation::Rule::Contraction: {
        const TypeSeq prem = context_types(d.premises[0].conclusion.context);
        TypeSeq left(prem.begin(), prem.begin() + d.pos);
        TypeSeq block(prem.begin() + d.pos, prem.begin() + d.pos + d.len);
        TypeSeq right(prem.begin() + d.pos + 2 * d.len, prem.end());
        ConcreteArrow copy = tensor_arrow(
            tensor_arrow(m.id_on(left), complete_delta(m, rules, block)),
            m.id_on(right));
        return compose_arrow(copy, interp(d.premises[0], m, rules));
    }
    }
    fail("MalformedNode", "unknown derivation rule");
}

void require_verified(const Prestructure& m, const RuleSet& rules) {
    StructureReport rep = rules.contraction_only()
                              ? well_definedness_sample(m, rules)
                              : check_structure(m, rules);
    for (const auto& e : rep.entries)
        if (!e.pass)
            fail("StructureUnverified",
                 "structure check failed at " + e.id +
                     (e.instance.empty() ? "" : " [" + e.instance + "]"));
}

} // namespace

ConcreteArrow interpret_derivation(const Derivation& d, const Prestructure& m,
                                   const RuleSet& rules, bool verify) {
    validate_prestructure(m, rules);
    if (verify) require_verified(m, rules);
    check_derivation(d, rules, m.sig);
    return interp(d, m, rules);
}

ConcreteArrow interpret(const Sequent& s, const Prestructure& m,
                        const RuleSet& rules, bool verify) {
    auto d = elaborate(s, rules, m.sig);
    if (!d) fail("NotDerivable", "sequent has no derivation under these rules");
    return interpret_derivation(*d, m, rules, verify);
}

bool satisfies(const Prestructure& m, const Formula& phi, const RuleSet& rules,
               bool verify) {
    if (verify) {
        validate_prestructure(m, rules);
        require_verified(m, rules);
    }
    ConcreteArrow lhs = interpret(phi.left_sequent(), m, rules, false);
    ConcreteArrow rhs = interpret(phi.right_sequent(), m, rules, false);
    return first_difference(lhs, rhs) < 0;
}

// -------- contraction-only sampler --------

namespace {

// all merge words with unit blocks, bounded length, from a starting width
void enumerate_merge_words(int start, int max_steps,
                           std::vector<GeneratorWord>& out) {
    struct Item {
        GeneratorWord w;
        int card;
    };
    std::vector<Item> frontier{{GeneratorWord{start, {}}, start}};
    while (!frontier.empty()) {
        Item it = frontier.back();
        frontier.pop_back();
        out.push_back(it.w);
        if ((int)it.w.steps.size() >= max_steps) continue;
        for (int pos = 0; pos + 2 <= it.card; ++pos) {
            Item nx = it;
            nx.w.steps.push_back({GeneratorStep::Kind::Contract, pos, 1});
            nx.card -= 1;
            frontier.push_back(nx);
        }
    }
}

// the derivation tree for a merge word over a single-type context
Derivation merge_word_derivation(const GeneratorWord& w, const AtomicType& a) {
    int n = w.start;
    // identity sequent on n variables, built from variable leaves
    std::vector<Derivation> leaves;
    for (int i = 0; i < n; ++i) {
        Derivation leaf;
        leaf.rule = Derivation::Rule::Variables;
        leaf.conclusion.context = {{"x" + std::to_string(i + 1), a}};
        leaf.conclusion.term = RawTerm::var("x" + std::to_string(i + 1));
        leaf.conclusion.codomain = {a};
        leaves.push_back(leaf);
    }
    Derivation cur;
    if (n == 0) {
        cur.rule = Derivation::Rule::Unit;
        cur.conclusion.term = RawTerm::make_empty();
    } else {
        cur = leaves[0];
        for (int i = 1; i < n; ++i) {
            Derivation t;
            t.rule = Derivation::Rule::Tensor;
            t.premises = {cur, leaves[i]};
            t.conclusion.context = cur.conclusion.context;
            t.conclusion.context.push_back(leaves[i].conclusion.context[0]);
            t.conclusion.term = RawTerm::tensor(
                {cur.conclusion.term, leaves[i].conclusion.term});
            t.conclusion.codomain = context_types(t.conclusion.context);
            cur = t;
        }
    }
    for (const auto& st : w.steps) {
        Derivation node;
        node.rule = Derivation::Rule::Contraction;
        node.pos = st.pos;
        node.len = st.len;
        const Context& pctx = cur.conclusion.context;
        Context cctx(pctx.begin(), pctx.begin() + st.pos + st.len);
        cctx.insert(cctx.end(), pctx.begin() + st.pos + 2 * st.len, pctx.end());
        std::vector<RawTerm> keep;
        std::vector<std::string> gone;
        for (int i = 0; i < st.len; ++i) {
            keep.push_back(RawTerm::var(pctx[st.pos + i].var));
            gone.push_back(pctx[st.pos + st.len + i].var);
        }
        node.conclusion.context = cctx;
        node.conclusion.term = substitute(cur.conclusion.term, keep, gone);
        node.conclusion.codomain = cur.conclusion.codomain;
        node.premises = {cur};
        cur = node;
    }
    return cur;
}

} // namespace

StructureReport well_definedness_sample(const Prestructure& m,
                                        const RuleSet& rules, int depth) {
    validate_prestructure(m, rules);
    if (!rules.contraction)
        fail("RuleDisabled", "sampler needs contraction");
    StructureReport rep;
    bool all_ok = true;
    for (const auto& a : m.sig.types) {
        for (int start = 2; start <= depth + 1; ++start) {
            std::vector<GeneratorWord> words;
            enumerate_merge_words(start, depth, words);
            std::map<FiniteFn, std::vector<const GeneratorWord*>> groups;
            for (const auto& w : words) groups[eval_word(w)].push_back(&w);
            for (const auto& [fn, grp] : groups) {
                if (grp.size() < 2) continue;
                Derivation base = merge_word_derivation(*grp[0], a);
                ConcreteArrow ref = interp(base, m, rules);
                for (size_t i = 1; i < grp.size(); ++i) {
                    Derivation other = merge_word_derivation(*grp[i], a);
                    ConcreteArrow alt = interp(other, m, rules);
                    long long w = first_difference(ref, alt);
                    if (w >= 0) {
                        all_ok = false;
                        rep.entries.push_back(
                            {"well-definedness",
                             a + ": width " + std::to_string(start) + " pair " +
                                 std::to_string(i),
                             false, w});
                    }
                }
            }
        }
    }
    rep.entries.push_back(
        {"well-definedness", "sampled, not proven", all_ok, -1});
    std::sort(rep.entries.begin(), rep.entries.end());
    return rep;
}

// -------- model check and morphisms --------

StructureReport model_check(const Prestructure& m, const Theory& t) {
    StructureReport rep = t.rules.contraction_only()
                              ? well_definedness_sample(m, t.rules)
                              : check_structure(m, t.rules);
    for (const auto& ax : t.axioms) {
        ConcreteArrow lhs = interpret(ax.formula.left_sequent(), m, t.rules, false);
        ConcreteArrow rhs = interpret(ax.formula.right_sequent(), m, t.rules, false);
        long long w = first_difference(lhs, rhs);
        rep.entries.push_back({ax.name, "", w < 0, w});
    }
    std::sort(rep.entries.begin(), rep.entries.end());
    return rep;
}

StructureReport check_morphism(const Prestructure& m, const Prestructure& n,
                               const RuleSet& rules,
                               const std::map<AtomicType, ConcreteArrow>& h) {
    validate_prestructure(m, rules);
    validate_prestructure(n, rules);
    if (m.kind != n.kind || (m.kind == ConcreteArrow::Kind::Matrix && !(m.rig == n.rig)))
        fail("ShapeMismatch", "morphism endpoints live in different targets");
    for (const auto& a : m.sig.types) {
        auto it = h.find(a);
        if (it == h.end()) fail("ShapeMismatch", "missing component for " + a);
        check_arrow_frame(m, it->second, m.size_of({a}), n.size_of({a}),
                          "component " + a);
    }
    auto h_on = [&](const TypeSeq& ts) {
        ConcreteArrow out = identity_arrow(m.kind, m.rig, 1);
        for (const auto& t : ts) out = tensor_arrow(out, h.at(t));
        return out;
    };
    StructureReport rep;
    for (const auto& c : m.sig.constants) {
        ConcreteArrow lhs = compose_arrow(m.arrow_of(c.name), h.at(c.output));
        ConcreteArrow rhs = compose_arrow(h_on(c.inputs), n.arrow_of(c.name));
        rep.entries.push_back(compare_entry("morphism", c.name, lhs, rhs));
    }
    if (rules.weakening)
        for (const auto& a : m.sig.types)
            rep.entries.push_back(compare_entry(
                "morphism", "pi " + a, m.pi.at(a),
                compose_arrow(h.at(a), n.pi.at(a))));
    if (rules.effective_exchange())
        for (const auto& a : m.sig.types)
            for (const auto& b : m.sig.types) {
                ConcreteArrow lhs = compose_arrow(m.tau.at({a, b}),
                                                  tensor_arrow(h.at(a), h.at(b)));
                ConcreteArrow rhs = compose_arrow(tensor_arrow(h.at(b), h.at(a)),
                                                  n.tau.at({a, b}));
                rep.entries.push_back(
                    compare_entry("morphism", "tau " + a + "," + b, lhs, rhs));
            }
    if (rules.contraction)
        for (const auto& a : m.sig.types) {
            ConcreteArrow lhs = compose_arrow(m.delta.at(a),
                                              tensor_arrow(h.at(a), h.at(a)));
            ConcreteArrow rhs = compose_arrow(h.at(a), n.delta.at(a));
            rep.entries.push_back(compare_entry("morphism", "delta " + a, lhs, rhs));
        }
    std::sort(rep.entries.begin(), rep.entries.end());
    return rep;
}

} // namespace monk
