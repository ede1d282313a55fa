#include "monk/factor.hpp"

#include <algorithm>
#include <map>

namespace monk {

// -------- factorisation --------

Factorisation factorize(const Sequent& s, const RuleSet& rules,
                        const Signature& sig) {
    if (!elaborate(s, rules, sig))
        fail("NotDerivable", "sequent is not derivable under the enabled rules");

    std::map<std::string, int> position;
    for (size_t i = 0; i < s.context.size(); ++i)
        position[s.context[i].var] = static_cast<int>(i);

    std::vector<std::string> occ = occurrences(s.term);
    FiniteFn fn;
    fn.dom = static_cast<int>(occ.size());
    fn.cod = static_cast<int>(s.context.size());
    TypeSeq occ_types;
    Context fctx;
    std::vector<std::string> names;
    for (size_t j = 0; j < occ.size(); ++j) {
        int p = position.at(occ[j]);
        fn.map.push_back(p);
        occ_types.push_back(s.context[p].type);
        std::string v = "v" + std::to_string(j + 1);
        names.push_back(v);
        fctx.push_back({v, s.context[p].type});
    }

    Factorisation out;
    out.structural = make_typed_arrow(context_types(s.context), occ_types, fn);
    out.functional = {std::move(fctx), relabel_occurrences(s.term, names),
                      s.codomain};
    return out;
}

Sequent structural_factor_sequent(const Sequent& s, const Factorisation& f) {
    std::vector<RawTerm> vars;
    for (int j = 0; j < f.structural.fn.dom; ++j)
        vars.push_back(RawTerm::var(s.context[f.structural.fn.map[j]].var));
    return {s.context, RawTerm::tensor(std::move(vars)), f.structural.target};
}

Sequent recompose(const Sequent& s, const Factorisation& f) {
    Sequent structural = canonical_rename(structural_factor_sequent(s, f));
    Sequent out;
    out.context = structural.context;
    out.term = substitute(f.functional.term, pieces(structural.term),
                          context_vars(f.functional.context));
    out.codomain = f.functional.codomain;
    return out;
}

Derivation eliminate_substitution(const Derivation& d, const RuleSet& rules,
                                  const Signature& sig) {
    Sequent s = check_derivation(d, rules, sig);
    auto out = elaborate(s, rules, sig);
    if (!out) fail("NotDerivable", "checked derivation failed to re-elaborate");
    return *out;
}

// -------- layered normal form --------

namespace {

struct Build {
    std::vector<std::vector<Slot>> layers;
    TypeSeq inputs;
};

std::vector<Slot> identity_layer(const TypeSeq& ts) {
    std::vector<Slot> layer;
    for (const auto& a : ts) layer.push_back({Slot::Kind::Identity, a, ""});
    return layer;
}

// pads every child with identity layers at the domain end so all reach the
// same depth, then tensors them layer by layer.
Build zip_children(std::vector<Build> children) {
    size_t depth = 0;
    for (const auto& c : children) depth = std::max(depth, c.layers.size());
    Build out;
    out.layers.resize(depth);
    for (const auto& c : children) {
        size_t pad = depth - c.layers.size();
        for (size_t j = 0; j < depth; ++j) {
            const std::vector<Slot>& piece =
                j < pad ? identity_layer(c.inputs) : c.layers[j - pad];
            out.layers[j].insert(out.layers[j].end(), piece.begin(), piece.end());
        }
        out.inputs.insert(out.inputs.end(), c.inputs.begin(), c.inputs.end());
    }
    return out;
}

Build build_layers(const RawTerm& t, const std::map<std::string, AtomicType>& env) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return {};
    case RawTerm::Kind::Var: return {{}, {env.at(t.name)}};
    case RawTerm::Kind::App: {
        std::vector<Build> children;
        for (const auto& a : t.args) children.push_back(build_layers(a, env));
        Build out = zip_children(std::move(children));
        out.layers.push_back({{Slot::Kind::Apply, "", t.name}});
        return out;
    }
    case RawTerm::Kind::Tensor: {
        std::vector<Build> children;
        for (const auto& a : t.args) children.push_back(build_layers(a, env));
        return zip_children(std::move(children));
    }
    }
    return {};
}

} // namespace

LayeredForm functional_normal_form(const Sequent& phi) {
    if (occurrences(phi.term) != context_vars(phi.context))
        fail("NotPurelyFunctional",
             "context variables must occur exactly once each, in order");
    std::map<std::string, AtomicType> env;
    for (const auto& e : phi.context) env[e.var] = e.type;
    return {build_layers(phi.term, env).layers};
}

Sequent layered_to_sequent(const LayeredForm& lf, const Context& ctx,
                           const Signature& sig) {
    std::vector<RawTerm> terms;
    TypeSeq types;
    for (const auto& e : ctx) {
        terms.push_back(RawTerm::var(e.var));
        types.push_back(e.type);
    }
    for (const auto& layer : lf.layers) {
        std::vector<RawTerm> nterms;
        TypeSeq ntypes;
        size_t at = 0;
        for (const auto& slot : layer) {
            if (slot.kind == Slot::Kind::Identity) {
                if (at >= terms.size() || types[at] != slot.type)
                    fail("ShapeMismatch", "identity strand does not match its input");
                nterms.push_back(terms[at]);
                ntypes.push_back(types[at]);
                ++at;
            } else {
                const Constant& c = sig.constant(slot.constant);
                std::vector<RawTerm> args;
                for (const auto& in : c.inputs) {
                    if (at >= terms.size() || types[at] != in)
                        fail("ShapeMismatch", "application does not match its inputs");
                    args.push_back(terms[at]);
                    ++at;
                }
                nterms.push_back(RawTerm::app(c.name, std::move(args)));
                ntypes.push_back(c.output);
            }
        }
        if (at != terms.size())
            fail("ShapeMismatch", "layer narrower than the strands below it");
        terms = std::move(nterms);
        types = std::move(ntypes);
    }
    return {ctx, RawTerm::tensor(std::move(terms)), std::move(types)};
}

// -------- word problem --------

bool term_eq(const Sequent& s1, const Sequent& s2, const RuleSet& rules,
             const Signature& sig) {
    if (context_types(s1.context) != context_types(s2.context) ||
        s1.codomain != s2.codomain)
        fail("SignatureMismatch",
             "word problem needs equal context types and codomains");
    Factorisation f1 = factorize(s1, rules, sig);
    Factorisation f2 = factorize(s2, rules, sig);
    return f1.structural == f2.structural && f1.functional == f2.functional;
}

} // namespace monk
