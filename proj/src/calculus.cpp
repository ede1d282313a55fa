#include "monk/calculus.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace monk {

// -------- theories --------

const Axiom* Theory::find_axiom(const std::string& n) const {
    for (const auto& a : axioms)
        if (a.name == n) return &a;
    return nullptr;
}

void validate_theory(const Theory& t) {
    for (const auto& ty : t.signature.types)
        if (ty.empty()) fail("TypeError", "empty type name");
    for (const auto& c : t.signature.constants) {
        if (!t.signature.has_type(c.output))
            fail("TypeError", "constant '" + c.name + "' outputs unknown type");
        for (const auto& a : c.inputs)
            if (!t.signature.has_type(a))
                fail("TypeError", "constant '" + c.name + "' takes unknown type");
    }
    for (const auto& ax : t.axioms) {
        if (!distinct_vars(ax.formula.context))
            fail("ContextClash", "axiom '" + ax.name + "' repeats a variable");
        if (!elaborate(ax.formula.left_sequent(), t.rules, t.signature) ||
            !elaborate(ax.formula.right_sequent(), t.rules, t.signature))
            fail("NonDerivableSide",
                 "axiom '" + ax.name + "' has an underivable side");
    }
}

// -------- derivation checking --------

static void ensure(bool ok, const char* code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

static Sequent computed_conclusion(const Derivation& d, const RuleSet& rules,
                                   const Signature& sig,
                                   const std::vector<Sequent>& prem) {
    using R = Derivation::Rule;
    switch (d.rule) {
    case R::Variables: {
        ensure(prem.empty(), "MalformedNode", "variables rule takes no premise");
        const Context& ctx = d.conclusion.context;
        ensure(ctx.size() == 1, "MalformedNode", "variables rule needs one variable");
        ensure(sig.has_type(ctx[0].type), "TypeError",
               "unknown type '" + ctx[0].type + "'");
        return {ctx, RawTerm::var(ctx[0].var), {ctx[0].type}};
    }
    case R::Functions: {
        const Constant& c = sig.constant(d.constant);
        ensure(prem.size() == c.inputs.size(), "ArityMismatch",
               "'" + c.name + "' expects " + std::to_string(c.inputs.size()) +
                   " arguments");
        Context ctx;
        std::vector<RawTerm> args;
        for (size_t i = 0; i < prem.size(); ++i) {
            ensure(prem[i].codomain == TypeSeq{c.inputs[i]}, "TypeError",
                   "argument " + std::to_string(i + 1) + " of '" + c.name +
                       "' has the wrong type");
            ctx.insert(ctx.end(), prem[i].context.begin(), prem[i].context.end());
            args.push_back(prem[i].term);
        }
        return {ctx, RawTerm::app(c.name, std::move(args)), {c.output}};
    }
    case R::Substitution: {
        ensure(prem.size() == 2, "MalformedNode", "substitution takes two premises");
        const Sequent& s = prem[0];
        const Sequent& t = prem[1];
        ensure(s.codomain == context_types(t.context), "TypeError",
               "substituted term does not match the context it replaces");
        return {s.context, substitute(t.term, pieces(s.term), context_vars(t.context)),
                t.codomain};
    }
    case R::Unit:
        ensure(prem.empty(), "MalformedNode", "unit rule takes no premise");
        return {{}, RawTerm::make_empty(), {}};
    case R::Tensor: {
        ensure(prem.size() == 2, "MalformedNode", "tensor takes two premises");
        Context ctx = prem[0].context;
        ctx.insert(ctx.end(), prem[1].context.begin(), prem[1].context.end());
        TypeSeq cod = prem[0].codomain;
        cod.insert(cod.end(), prem[1].codomain.begin(), prem[1].codomain.end());
        return {ctx, RawTerm::tensor({prem[0].term, prem[1].term}), cod};
    }
    case R::Weakening: {
        ensure(rules.weakening, "RuleDisabled", "weakening is not enabled");
        ensure(prem.size() == 1, "MalformedNode", "weakening takes one premise");
        const Context& cctx = d.conclusion.context;
        ensure(d.len >= 1 && d.pos >= 0 &&
                   d.pos + d.len <= static_cast<int>(cctx.size()),
               "MalformedNode", "weakening block out of range");
        Context without(cctx.begin(), cctx.begin() + d.pos);
        without.insert(without.end(), cctx.begin() + d.pos + d.len, cctx.end());
        ensure(without == prem[0].context, "MalformedNode",
               "weakening premise does not match the conclusion minus the block");
        return {cctx, prem[0].term, prem[0].codomain};
    }
    case R::Exchange: {
        ensure(rules.exchange, "RuleDisabled", "exchange is not enabled");
        ensure(prem.size() == 1, "MalformedNode", "exchange takes one premise");
        const Context& pctx = prem[0].context;
        const size_t n = pctx.size();
        ensure(d.perm.size() == n, "MalformedNode", "permutation length mismatch");
        std::vector<bool> hit(n, false);
        for (int v : d.perm) {
            ensure(v >= 0 && v < static_cast<int>(n) && !hit[v], "MalformedNode",
                   "not a permutation");
            hit[v] = true;
        }
        Context ctx(n);
        for (size_t j = 0; j < n; ++j) ctx[j] = pctx[d.perm[j]];
        return {ctx, prem[0].term, prem[0].codomain};
    }
    case R::Contraction: {
        ensure(rules.contraction, "RuleDisabled", "contraction is not enabled");
        ensure(prem.size() == 1, "MalformedNode", "contraction takes one premise");
        const Context& pctx = prem[0].context;
        ensure(d.len >= 1 && d.pos >= 0 &&
                   d.pos + 2 * d.len <= static_cast<int>(pctx.size()),
               "MalformedNode", "contraction blocks out of range");
        std::vector<RawTerm> kept;
        std::vector<std::string> dropped;
        for (int j = 0; j < d.len; ++j) {
            const ContextEntry& a = pctx[d.pos + j];
            const ContextEntry& b = pctx[d.pos + d.len + j];
            ensure(a.type == b.type, "MalformedNode",
                   "contracted blocks must have equal types");
            kept.push_back(RawTerm::var(a.var));
            dropped.push_back(b.var);
        }
        Context ctx(pctx.begin(), pctx.begin() + d.pos + d.len);
        ctx.insert(ctx.end(), pctx.begin() + d.pos + 2 * d.len, pctx.end());
        return {ctx, substitute(prem[0].term, kept, dropped), prem[0].codomain};
    }
    }
    fail("MalformedNode", "unknown derivation rule");
}

Sequent check_derivation(const Derivation& d, const RuleSet& rules,
                         const Signature& sig) {
    std::vector<Sequent> prem;
    prem.reserve(d.premises.size());
    for (const auto& p : d.premises) prem.push_back(check_derivation(p, rules, sig));
    Sequent got = computed_conclusion(d, rules, sig, prem);
    ensure(distinct_vars(got.context), "ContextClash",
           "conclusion context repeats a variable");
    ensure(got == d.conclusion, "MalformedNode",
           "stored conclusion differs from the rule's conclusion");
    return got;
}

// -------- sequent analysis --------

namespace {

struct FreshNames {
    std::set<std::string> used;
    int counter = 0;
    std::string next() {
        for (;;) {
            std::string n = "u" + std::to_string(++counter);
            if (!used.count(n)) return n;
        }
    }
};

struct Analysis {
    RawTerm skeleton; // term with occurrences relabeled to fresh variables
    std::vector<std::string> occ_names;
    TypeSeq occ_types;
    FiniteFn fn; // occurrence index -> context position
    GeneratorWord word;
};

// checks well-formedness (hard errors) and infers the type sequence of a
// subterm; nullopt when some function symbol is applied at the wrong types.
std::optional<TypeSeq> type_of(const RawTerm& t,
                               const std::map<std::string, AtomicType>& vars,
                               const Signature& sig) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return TypeSeq{};
    case RawTerm::Kind::Var: {
        auto it = vars.find(t.name);
        if (it == vars.end())
            fail("TypeError", "variable '" + t.name + "' not in context");
        return TypeSeq{it->second};
    }
    case RawTerm::Kind::App: {
        const Constant& c = sig.constant(t.name);
        if (t.args.size() != c.inputs.size())
            fail("ArityMismatch", "'" + c.name + "' expects " +
                                      std::to_string(c.inputs.size()) +
                                      " arguments");
        for (size_t i = 0; i < t.args.size(); ++i) {
            auto ti = type_of(t.args[i], vars, sig);
            if (!ti || *ti != TypeSeq{c.inputs[i]}) return std::nullopt;
        }
        return TypeSeq{c.output};
    }
    case RawTerm::Kind::Tensor: {
        TypeSeq out;
        for (const auto& f : t.args) {
            auto tf = type_of(f, vars, sig);
            if (!tf) return std::nullopt;
            out.insert(out.end(), tf->begin(), tf->end());
        }
        return out;
    }
    }
    return std::nullopt;
}

std::optional<Analysis> analyze(const Sequent& s, const RuleSet& rules,
                                const Signature& sig, FreshNames& fresh) {
    if (!distinct_vars(s.context))
        fail("ContextClash", "context repeats a variable");
    std::map<std::string, AtomicType> vars;
    std::map<std::string, int> position;
    for (size_t i = 0; i < s.context.size(); ++i) {
        const auto& e = s.context[i];
        if (!sig.has_type(e.type)) fail("TypeError", "unknown type '" + e.type + "'");
        vars[e.var] = e.type;
        position[e.var] = static_cast<int>(i);
        fresh.used.insert(e.var);
    }
    for (const auto& a : s.codomain)
        if (!sig.has_type(a)) fail("TypeError", "unknown type '" + a + "'");

    auto ty = type_of(s.term, vars, sig);
    if (!ty || *ty != s.codomain) return std::nullopt;

    Analysis an;
    std::vector<std::string> occ = occurrences(s.term);
    an.fn.dom = static_cast<int>(occ.size());
    an.fn.cod = static_cast<int>(s.context.size());
    for (const auto& v : occ) {
        an.fn.map.push_back(position.at(v));
        an.occ_types.push_back(vars.at(v));
        an.occ_names.push_back(fresh.next());
    }
    an.skeleton = relabel_occurrences(s.term, an.occ_names);

    auto word = membership(an.fn, rules);
    if (!word) return std::nullopt;
    an.word = std::move(*word);
    return an;
}

// substitution-free derivation of the skeleton over its occurrence variables
Derivation build_functional(const RawTerm& t,
                            const std::map<std::string, AtomicType>& types,
                            const Signature& sig) {
    Derivation d;
    switch (t.kind) {
    case RawTerm::Kind::Empty:
        d.rule = Derivation::Rule::Unit;
        d.conclusion = {{}, RawTerm::make_empty(), {}};
        return d;
    case RawTerm::Kind::Var: {
        d.rule = Derivation::Rule::Variables;
        AtomicType a = types.at(t.name);
        d.conclusion = {{{t.name, a}}, t, {a}};
        return d;
    }
    case RawTerm::Kind::App: {
        d.rule = Derivation::Rule::Functions;
        d.constant = t.name;
        Context ctx;
        for (const auto& arg : t.args) {
            Derivation p = build_functional(arg, types, sig);
            ctx.insert(ctx.end(), p.conclusion.context.begin(),
                       p.conclusion.context.end());
            d.premises.push_back(std::move(p));
        }
        d.conclusion = {ctx, t, {sig.constant(t.name).output}};
        return d;
    }
    case RawTerm::Kind::Tensor: {
        Derivation acc = build_functional(t.args[0], types, sig);
        for (size_t i = 1; i < t.args.size(); ++i) {
            Derivation next = build_functional(t.args[i], types, sig);
            Derivation node;
            node.rule = Derivation::Rule::Tensor;
            Context ctx = acc.conclusion.context;
            ctx.insert(ctx.end(), next.conclusion.context.begin(),
                       next.conclusion.context.end());
            TypeSeq cod = acc.conclusion.codomain;
            cod.insert(cod.end(), next.conclusion.codomain.begin(),
                       next.conclusion.codomain.end());
            RawTerm tm = RawTerm::tensor({acc.conclusion.term, next.conclusion.term});
            node.premises = {std::move(acc), std::move(next)};
            node.conclusion = {ctx, tm, cod};
            acc = std::move(node);
        }
        return acc;
    }
    }
    return d;
}

void rename_everywhere(Derivation& d, const std::map<std::string, std::string>& m) {
    for (auto& e : d.conclusion.context) {
        auto it = m.find(e.var);
        if (it != m.end()) e.var = it->second;
    }
    std::vector<RawTerm> ps;
    std::vector<std::string> xs;
    for (const auto& [from, to] : m) {
        ps.push_back(RawTerm::var(to));
        xs.push_back(from);
    }
    d.conclusion.term = substitute(d.conclusion.term, ps, xs);
    for (auto& p : d.premises) rename_everywhere(p, m);
}

} // namespace

std::optional<Derivation> elaborate(const Sequent& s, const RuleSet& rules,
                                    const Signature& sig) {
    FreshNames fresh;
    auto an = analyze(s, rules, sig, fresh);
    if (!an) return std::nullopt;

    std::map<std::string, AtomicType> occ_types;
    for (size_t j = 0; j < an->occ_names.size(); ++j)
        occ_types[an->occ_names[j]] = an->occ_types[j];
    Derivation cur = build_functional(an->skeleton, occ_types, sig);

    // stage cardinals and the suffix maps sending stage positions to final
    // context positions (which carry the types for inserted blocks)
    const auto& steps = an->word.steps;
    const int r = static_cast<int>(steps.size());
    const int m = static_cast<int>(s.context.size());
    std::vector<int> card(r + 1);
    card[0] = an->word.start;
    for (int i = 0; i < r; ++i) card[i + 1] = step_fn(steps[i], card[i]).cod;
    std::vector<FiniteFn> suffix(r + 1);
    suffix[r] = FiniteFn::identity(m);
    for (int i = r - 1; i >= 0; --i)
        suffix[i] = compose_fn(step_fn(steps[i], card[i]), suffix[i + 1]);

    for (int i = 0; i < r; ++i) {
        const GeneratorStep& st = steps[i];
        Sequent prev = cur.conclusion;
        Derivation node;
        node.premises.push_back(std::move(cur));
        switch (st.kind) {
        case GeneratorStep::Kind::Weaken: {
            node.rule = Derivation::Rule::Weakening;
            node.pos = st.pos;
            node.len = st.len;
            Context ins;
            for (int q = st.pos; q < st.pos + st.len; ++q)
                ins.push_back({fresh.next(), s.context[suffix[i + 1].map[q]].type});
            Context ctx = prev.context;
            ctx.insert(ctx.begin() + st.pos, ins.begin(), ins.end());
            node.conclusion = {ctx, prev.term, prev.codomain};
            break;
        }
        case GeneratorStep::Kind::Exchange: {
            node.rule = Derivation::Rule::Exchange;
            std::vector<int> perm(card[i]);
            for (int j = 0; j < card[i]; ++j) perm[j] = j;
            std::swap(perm[st.pos], perm[st.pos + 1]);
            node.perm = perm;
            Context ctx = prev.context;
            std::swap(ctx[st.pos], ctx[st.pos + 1]);
            node.conclusion = {ctx, prev.term, prev.codomain};
            break;
        }
        case GeneratorStep::Kind::Contract: {
            node.rule = Derivation::Rule::Contraction;
            node.pos = st.pos;
            node.len = st.len;
            std::vector<RawTerm> kept;
            std::vector<std::string> dropped;
            for (int j = 0; j < st.len; ++j) {
                kept.push_back(RawTerm::var(prev.context[st.pos + j].var));
                dropped.push_back(prev.context[st.pos + st.len + j].var);
            }
            Context ctx(prev.context.begin(), prev.context.begin() + st.pos + st.len);
            ctx.insert(ctx.end(), prev.context.begin() + st.pos + 2 * st.len,
                       prev.context.end());
            node.conclusion = {ctx, substitute(prev.term, kept, dropped),
                               prev.codomain};
            break;
        }
        }
        cur = std::move(node);
    }

    std::map<std::string, std::string> back;
    for (int q = 0; q < m; ++q)
        back[cur.conclusion.context[q].var] = s.context[q].var;
    rename_everywhere(cur, back);
    if (!(cur.conclusion == s))
        fail("MalformedNode", "elaboration produced a different conclusion");
    return cur;
}

// -------- proof checking --------

static Formula proof_conclusion(const ProofTree& p, const Theory& t,
                                const std::vector<Formula>& prem) {
    using R = ProofTree::Rule;
    switch (p.rule) {
    case R::Axiom: {
        ensure(prem.empty(), "MalformedNode", "axiom nodes take no premise");
        const Axiom* ax = t.find_axiom(p.axiom);
        if (!ax) fail("UnknownAxiom", "no axiom named '" + p.axiom + "'");
        Formula want = canonical_rename(ax->formula);
        Formula got = canonical_rename(p.conclusion);
        ensure(got == want, "MalformedNode",
               "node is not a renaming of axiom '" + p.axiom + "'");
        return p.conclusion;
    }
    case R::Reflexivity: {
        ensure(prem.empty(), "MalformedNode", "reflexivity takes no premise");
        ensure(p.conclusion.left == p.conclusion.right, "MalformedNode",
               "reflexivity requires equal sides");
        return p.conclusion;
    }
    case R::Symmetry: {
        ensure(prem.size() == 1, "MalformedNode", "symmetry takes one premise");
        const Formula& f = prem[0];
        return {f.context, f.right, f.left, f.codomain};
    }
    case R::Transitivity: {
        ensure(prem.size() == 2, "MalformedNode", "transitivity takes two premises");
        const Formula& f = prem[0];
        const Formula& g = prem[1];
        ensure(f.context == g.context && f.codomain == g.codomain,
               "MalformedNode", "transitivity premises over different contexts");
        ensure(f.right == g.left, "MalformedNode",
               "transitivity premises do not share the middle term");
        return {f.context, f.left, g.right, f.codomain};
    }
    case R::Substitution: {
        ensure(prem.size() == 2, "MalformedNode", "substitution takes two premises");
        const Formula& f = prem[0]; // x:A |- s = s' : B
        const Formula& g = prem[1]; // y:B |- t = t' : C
        ensure(f.codomain == context_types(g.context), "TypeError",
               "substituted formula does not match the context it replaces");
        auto ys = context_vars(g.context);
        return {f.context, substitute(g.left, pieces(f.left), ys),
                substitute(g.right, pieces(f.right), ys), g.codomain};
    }
    case R::Tensor: {
        ensure(prem.size() == 2, "MalformedNode", "tensor takes two premises");
        Context ctx = prem[0].context;
        ctx.insert(ctx.end(), prem[1].context.begin(), prem[1].context.end());
        TypeSeq cod = prem[0].codomain;
        cod.insert(cod.end(), prem[1].codomain.begin(), prem[1].codomain.end());
        return {ctx, RawTerm::tensor({prem[0].left, prem[1].left}),
                RawTerm::tensor({prem[0].right, prem[1].right}), cod};
    }
    case R::Weakening: {
        ensure(t.rules.weakening, "RuleDisabled", "weakening is not enabled");
        ensure(prem.size() == 1, "MalformedNode", "weakening takes one premise");
        const Context& cctx = p.conclusion.context;
        ensure(p.len >= 1 && p.pos >= 0 &&
                   p.pos + p.len <= static_cast<int>(cctx.size()),
               "MalformedNode", "weakening block out of range");
        Context without(cctx.begin(), cctx.begin() + p.pos);
        without.insert(without.end(), cctx.begin() + p.pos + p.len, cctx.end());
        ensure(without == prem[0].context, "MalformedNode",
               "weakening premise does not match the conclusion minus the block");
        return {cctx, prem[0].left, prem[0].right, prem[0].codomain};
    }
    case R::Exchange: {
        ensure(t.rules.exchange, "RuleDisabled", "exchange is not enabled");
        ensure(prem.size() == 1, "MalformedNode", "exchange takes one premise");
        const Context& pctx = prem[0].context;
        const size_t n = pctx.size();
        ensure(p.perm.size() == n, "MalformedNode", "permutation length mismatch");
        std::vector<bool> hit(n, false);
        for (int v : p.perm) {
            ensure(v >= 0 && v < static_cast<int>(n) && !hit[v], "MalformedNode",
                   "not a permutation");
            hit[v] = true;
        }
        Context ctx(n);
        for (size_t j = 0; j < n; ++j) ctx[j] = pctx[p.perm[j]];
        return {ctx, prem[0].left, prem[0].right, prem[0].codomain};
    }
    case R::Contraction: {
        ensure(t.rules.contraction, "RuleDisabled", "contraction is not enabled");
        ensure(prem.size() == 1, "MalformedNode", "contraction takes one premise");
        const Context& pctx = prem[0].context;
        ensure(p.len >= 1 && p.pos >= 0 &&
                   p.pos + 2 * p.len <= static_cast<int>(pctx.size()),
               "MalformedNode", "contraction blocks out of range");
        std::vector<RawTerm> kept;
        std::vector<std::string> dropped;
        for (int j = 0; j < p.len; ++j) {
            const ContextEntry& a = pctx[p.pos + j];
            const ContextEntry& b = pctx[p.pos + p.len + j];
            ensure(a.type == b.type, "MalformedNode",
                   "contracted blocks must have equal types");
            kept.push_back(RawTerm::var(a.var));
            dropped.push_back(b.var);
        }
        Context ctx(pctx.begin(), pctx.begin() + p.pos + p.len);
        ctx.insert(ctx.end(), pctx.begin() + p.pos + 2 * p.len, pctx.end());
        return {ctx, substitute(prem[0].left, kept, dropped),
                substitute(prem[0].right, kept, dropped), prem[0].codomain};
    }
    }
    fail("MalformedNode", "unknown proof rule");
}

Formula check_proof(const ProofTree& p, const Theory& t) {
    std::vector<Formula> prem;
    prem.reserve(p.premises.size());
    for (const auto& q : p.premises) prem.push_back(check_proof(q, t));
    Formula got = proof_conclusion(p, t, prem);
    ensure(distinct_vars(got.context), "ContextClash",
           "conclusion context repeats a variable");
    ensure(got == p.conclusion, "MalformedNode",
           "stored conclusion differs from the rule's conclusion");
    if (!elaborate(got.left_sequent(), t.rules, t.signature) ||
        !elaborate(got.right_sequent(), t.rules, t.signature))
        fail("NonDerivableSide", "formula has an underivable side");
    return got;
}

} // namespace monk
