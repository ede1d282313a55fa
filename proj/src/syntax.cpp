#include "monk/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace monk {

// -------- types and signature --------

std::string show_typeseq(const TypeSeq& ts) {
    if (ts.empty()) return "I";
    std::ostringstream out;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i) out << ' ';
        out << ts[i];
    }
    return out.str();
}

bool Signature::has_type(const AtomicType& a) const {
    return std::find(types.begin(), types.end(), a) != types.end();
}

const Constant* Signature::find(const std::string& name) const {
    for (const auto& c : constants)
        if (c.name == name) return &c;
    return nullptr;
}

const Constant& Signature::constant(const std::string& name) const {
    const Constant* c = find(name);
    if (!c) fail("UnknownConstant", "no constant named '" + name + "'");
    return *c;
}

// -------- raw terms --------

RawTerm RawTerm::make_empty() { return RawTerm{}; }

RawTerm RawTerm::var(std::string n) {
    RawTerm t;
    t.kind = Kind::Var;
    t.name = std::move(n);
    return t;
}

RawTerm RawTerm::app(std::string constant, std::vector<RawTerm> arguments) {
    RawTerm t;
    t.kind = Kind::App;
    t.name = std::move(constant);
    t.args = std::move(arguments);
    return t;
}

RawTerm RawTerm::tensor(std::vector<RawTerm> factors) {
    std::vector<RawTerm> flat;
    for (auto& f : factors) {
        if (f.kind == Kind::Empty) continue;
        if (f.kind == Kind::Tensor)
            flat.insert(flat.end(), f.args.begin(), f.args.end());
        else
            flat.push_back(std::move(f));
    }
    if (flat.empty()) return make_empty();
    if (flat.size() == 1) return flat[0];
    RawTerm t;
    t.kind = Kind::Tensor;
    t.args = std::move(flat);
    return t;
}

bool RawTerm::operator==(const RawTerm& o) const {
    return kind == o.kind && name == o.name && args == o.args;
}

int term_length(const RawTerm& t) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return 0;
    case RawTerm::Kind::Var:
    case RawTerm::Kind::App: return 1;
    case RawTerm::Kind::Tensor: {
        int n = 0;
        for (const auto& f : t.args) n += term_length(f);
        return n;
    }
    }
    return 0;
}

std::vector<RawTerm> pieces(const RawTerm& t) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return {};
    case RawTerm::Kind::Var:
    case RawTerm::Kind::App: return {t};
    case RawTerm::Kind::Tensor: return t.args;
    }
    return {};
}

static void collect_occurrences(const RawTerm& t, std::vector<std::string>& out) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: break;
    case RawTerm::Kind::Var: out.push_back(t.name); break;
    case RawTerm::Kind::App:
    case RawTerm::Kind::Tensor:
        for (const auto& a : t.args) collect_occurrences(a, out);
        break;
    }
}

std::vector<std::string> occurrences(const RawTerm& t) {
    std::vector<std::string> out;
    collect_occurrences(t, out);
    return out;
}

static RawTerm substitute_rec(const RawTerm& t,
                              const std::map<std::string, const RawTerm*>& env) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return t;
    case RawTerm::Kind::Var: {
        auto it = env.find(t.name);
        return it == env.end() ? t : *it->second;
    }
    case RawTerm::Kind::App: {
        std::vector<RawTerm> as;
        as.reserve(t.args.size());
        for (const auto& a : t.args) as.push_back(substitute_rec(a, env));
        return RawTerm::app(t.name, std::move(as));
    }
    case RawTerm::Kind::Tensor: {
        std::vector<RawTerm> fs;
        fs.reserve(t.args.size());
        for (const auto& a : t.args) fs.push_back(substitute_rec(a, env));
        return RawTerm::tensor(std::move(fs));
    }
    }
    return t;
}

RawTerm substitute(const RawTerm& t, const std::vector<RawTerm>& s,
                   const std::vector<std::string>& x) {
    if (s.size() != x.size())
        fail("LengthMismatch", "substituting " + std::to_string(s.size()) +
                                   " pieces for " + std::to_string(x.size()) +
                                   " variables");
    for (const auto& piece : s)
        if (term_length(piece) != 1)
            fail("LengthMismatch", "substitution piece must have length one");
    std::map<std::string, const RawTerm*> env;
    for (size_t i = 0; i < x.size(); ++i) env[x[i]] = &s[i];
    return substitute_rec(t, env);
}

static RawTerm relabel_rec(const RawTerm& t, const std::vector<std::string>& names,
                           size_t& at) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return t;
    case RawTerm::Kind::Var: return RawTerm::var(names[at++]);
    case RawTerm::Kind::App: {
        std::vector<RawTerm> as;
        for (const auto& a : t.args) as.push_back(relabel_rec(a, names, at));
        return RawTerm::app(t.name, std::move(as));
    }
    case RawTerm::Kind::Tensor: {
        std::vector<RawTerm> fs;
        for (const auto& a : t.args) fs.push_back(relabel_rec(a, names, at));
        return RawTerm::tensor(std::move(fs));
    }
    }
    return t;
}

RawTerm relabel_occurrences(const RawTerm& t, const std::vector<std::string>& names) {
    if (occurrences(t).size() != names.size())
        fail("LengthMismatch", "occurrence relabeling needs one name per occurrence");
    size_t at = 0;
    return relabel_rec(t, names, at);
}

// -------- sequents --------

TypeSeq context_types(const Context& ctx) {
    TypeSeq ts;
    ts.reserve(ctx.size());
    for (const auto& e : ctx) ts.push_back(e.type);
    return ts;
}

std::vector<std::string> context_vars(const Context& ctx) {
    std::vector<std::string> vs;
    vs.reserve(ctx.size());
    for (const auto& e : ctx) vs.push_back(e.var);
    return vs;
}

bool distinct_vars(const Context& ctx) {
    std::set<std::string> seen;
    for (const auto& e : ctx)
        if (!seen.insert(e.var).second) return false;
    return true;
}

static RawTerm rename_term(const RawTerm& t,
                           const std::map<std::string, std::string>& env) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return t;
    case RawTerm::Kind::Var: {
        auto it = env.find(t.name);
        if (it == env.end())
            fail("UnboundVariable", "variable '" + t.name + "' not in context");
        return RawTerm::var(it->second);
    }
    case RawTerm::Kind::App: {
        std::vector<RawTerm> as;
        for (const auto& a : t.args) as.push_back(rename_term(a, env));
        return RawTerm::app(t.name, std::move(as));
    }
    case RawTerm::Kind::Tensor: {
        std::vector<RawTerm> fs;
        for (const auto& a : t.args) fs.push_back(rename_term(a, env));
        return RawTerm::tensor(std::move(fs));
    }
    }
    return t;
}

Sequent canonical_rename(const Sequent& s) {
    std::map<std::string, std::string> env;
    Context ctx;
    for (size_t i = 0; i < s.context.size(); ++i) {
        std::string v = "v" + std::to_string(i + 1);
        env[s.context[i].var] = v;
        ctx.push_back({v, s.context[i].type});
    }
    return {std::move(ctx), rename_term(s.term, env), s.codomain};
}

Formula canonical_rename(const Formula& f) {
    std::map<std::string, std::string> env;
    Context ctx;
    for (size_t i = 0; i < f.context.size(); ++i) {
        std::string v = "v" + std::to_string(i + 1);
        env[f.context[i].var] = v;
        ctx.push_back({v, f.context[i].type});
    }
    return {std::move(ctx), rename_term(f.left, env), rename_term(f.right, env),
            f.codomain};
}

} // namespace monk
