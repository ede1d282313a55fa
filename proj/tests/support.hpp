#pragma once

// shared helpers for the test binaries: tiny term builders, seeded random
// generation and small enumerators so every run is reproducible.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monk/calculus.hpp"
#include "monk/semantics.hpp"
#include "monk/structural.hpp"
#include "monk/syntax.hpp"
#include "monk/truthvalues.hpp"

namespace testkit {

using monk::RawTerm;

// first error code thrown by f, or "" when it returns normally
template <class F>
inline std::string error_code(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const monk::error& e) {
        return e.code;
    }
    return "";
}

#ifdef MONK_FIXTURES_DIR
inline std::string fixture_path(const std::string& name) {
    return std::string(MONK_FIXTURES_DIR) + "/" + name;
}
#endif

inline std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RawTerm V(const std::string& n) { return RawTerm::var(n); }
inline RawTerm A(const std::string& f, std::vector<RawTerm> args) {
    return RawTerm::app(f, std::move(args));
}
inline RawTerm T(std::vector<RawTerm> fs) { return RawTerm::tensor(std::move(fs)); }
inline RawTerm E() { return RawTerm::make_empty(); }

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }
    bool flip() { return below(2) == 0; }
};

// raw term over the given variable names (repetitions allowed), using a
// fixed scratch signature: un : X -> X, bin : X X -> X, nil : -> X.
inline RawTerm random_raw_term(Rng& rng, const std::vector<std::string>& vars,
                               int depth) {
    int choice = depth <= 0 ? rng.below(2) : rng.below(6);
    switch (choice) {
    case 0:
    case 1:
        if (!vars.empty()) return V(vars[rng.below((int)vars.size())]);
        return A("nil", {});
    case 2: return A("nil", {});
    case 3: return A("un", {random_raw_term(rng, vars, depth - 1)});
    case 4:
        return A("bin", {random_raw_term(rng, vars, depth - 1),
                         random_raw_term(rng, vars, depth - 1)});
    default:
        return T({random_raw_term(rng, vars, depth - 1),
                  random_raw_term(rng, vars, depth - 1)});
    }
}

// length-one raw term (a variable or an application)
inline RawTerm random_piece(Rng& rng, const std::vector<std::string>& vars,
                            int depth) {
    for (;;) {
        RawTerm t = random_raw_term(rng, vars, depth);
        if (monk::term_length(t) == 1) return t;
    }
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
    return p;
}

// all functions n -> m as map vectors
inline std::vector<std::vector<int>> all_maps(int n, int m) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    if (m == 0) return out; // no functions from a nonempty set into 0
    std::vector<int> cur(n, 0);
    for (;;) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == m - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

inline const std::vector<monk::RuleSet>& all_rule_sets() {
    static const std::vector<monk::RuleSet> rs = [] {
        std::vector<monk::RuleSet> v;
        for (int w = 0; w < 2; ++w)
            for (int e = 0; e < 2; ++e)
                for (int c = 0; c < 2; ++c)
                    v.push_back(monk::RuleSet{w == 1, e == 1, c == 1});
        return v;
    }();
    return rs;
}

// random derivable sequent: draw a generator word over the enabled rules,
// evaluate it to an occurrence function, pick context types, and wrap a
// random functional skeleton around the occurrences.
struct RandomSequent {
    monk::Sequent sequent;
    monk::FiniteFn fn;
};

inline RandomSequent random_derivable_sequent(Rng& rng, const monk::RuleSet& s,
                                              const monk::Signature& sig,
                                              int max_ctx = 4) {
    using monk::GeneratorStep;
    // context of size m over the signature's types
    int m = rng.below(max_ctx) + 1;
    monk::Context ctx;
    for (int i = 0; i < m; ++i)
        ctx.push_back({"x" + std::to_string(i + 1),
                       sig.types[rng.below((int)sig.types.size())]});

    // walk a random word backwards from the context: the inverse steps of a
    // word n -> m, built from m upward, so the composite is guaranteed in s
    monk::FiniteFn fn = monk::FiniteFn::identity(m);
    int extra = rng.below(4);
    for (int step = 0; step < extra; ++step) {
        int c = fn.dom;
        int kind = rng.below(3);
        if (kind == 0 && s.contraction && c >= 1) {
            // duplicate a block: precompose with a contract step's function.
            // stay below the contraction-only saturation cap of cardinal 8.
            int len = rng.below(std::min(2, c)) + 1;
            if (c + len > 8) continue;
            int pos = rng.below(c - len + 1);
            monk::GeneratorStep st{GeneratorStep::Kind::Contract, pos, len};
            fn = monk::compose_fn(monk::step_fn(st, c + len), fn);
        } else if (kind == 1 && s.weakening && c >= 1) {
            // skip a point: precompose with a weaken step one cardinal down
            int pos = rng.below(c);
            monk::GeneratorStep st{GeneratorStep::Kind::Weaken, pos, 1};
            fn = monk::compose_fn(monk::step_fn(st, c - 1), fn);
        } else if (kind == 2 && (s.exchange || (s.weakening && s.contraction)) &&
                   c >= 2) {
            int pos = rng.below(c - 1);
            monk::GeneratorStep st{GeneratorStep::Kind::Exchange, pos, 1};
            fn = monk::compose_fn(monk::step_fn(st, c), fn);
        }
    }

    // wrap each occurrence in a unary chain and tensor the strands; this
    // stays derivable because the occurrence function is unchanged
    std::vector<RawTerm> strands;
    for (int j = 0; j < fn.dom; ++j) {
        RawTerm t = V(ctx[fn.map[j]].var);
        const monk::AtomicType& a = ctx[fn.map[j]].type;
        int wraps = rng.below(3);
        for (int k = 0; k < wraps; ++k) {
            // only apply a unary constant of matching type if one exists
            const monk::Constant* found = nullptr;
            for (const auto& cst : sig.constants)
                if (cst.inputs == monk::TypeSeq{a} && cst.output == a) found = &cst;
            if (!found) break;
            t = A(found->name, {t});
        }
        strands.push_back(t);
    }
    monk::Sequent out;
    out.context = ctx;
    out.term = T(std::move(strands));
    auto ty = monk::TypeSeq{};
    for (int j = 0; j < fn.dom; ++j) ty.push_back(ctx[fn.map[j]].type);
    out.codomain = ty;
    return {out, fn};
}

// every canonical term over exactly the given variable set, with at most
// max_width factors in each join; subterm position forbids bottoms and
// demands at least two factors
inline std::vector<monk::CanonicalTerm> canonical_over(
    const std::vector<int>& vars, int max_width, bool as_subterm = false) {
    using CT = monk::CanonicalTerm;
    std::vector<CT> out;
    if (vars.empty()) {
        if (!as_subterm) {
            CT bot;
            bot.kind = CT::Kind::Bottom;
            out.push_back(bot);
            CT neg;
            neg.kind = CT::Kind::NegBottom;
            out.push_back(neg);
        }
        return out;
    }

    const int n = (int)vars.size();
    std::vector<int> block(n, 0);
    std::vector<std::vector<std::vector<int>>> partitions;
    std::function<void(int, int)> go = [&](int i, int used) {
        if (i == n) {
            std::vector<std::vector<int>> p(used);
            for (int j = 0; j < n; ++j) p[block[j]].push_back(vars[j]);
            partitions.push_back(std::move(p));
            return;
        }
        for (int b = 0; b <= used; ++b) {
            if (b == used && used == max_width) break;
            block[i] = b;
            go(i + 1, b == used ? used + 1 : used);
        }
    };
    go(0, 0);

    struct Opt {
        bool atom;
        CT::Atom a;
        CT sub;
    };
    for (const auto& p : partitions) {
        if (as_subterm && p.size() < 2) continue;
        std::vector<std::vector<Opt>> menu;
        for (const auto& blk : p) {
            std::vector<Opt> os;
            if (blk.size() == 1) {
                os.push_back({true, {blk[0], false}, {}});
                os.push_back({true, {blk[0], true}, {}});
            } else {
                for (auto& s : canonical_over(blk, max_width, true))
                    os.push_back({false, {}, std::move(s)});
            }
            menu.push_back(std::move(os));
        }
        std::vector<size_t> idx(menu.size(), 0);
        for (;;) {
            CT t;
            t.kind = CT::Kind::Join;
            for (size_t k = 0; k < menu.size(); ++k) {
                const Opt& o = menu[k][idx[k]];
                if (o.atom)
                    t.atoms.push_back(o.a);
                else
                    t.subterms.push_back(o.sub);
            }
            std::sort(t.atoms.begin(), t.atoms.end(),
                      [](const CT::Atom& x, const CT::Atom& y) {
                          return x.index < y.index;
                      });
            std::sort(t.subterms.begin(), t.subterms.end(),
                      [](const CT& x, const CT& y) { return x.weight() < y.weight(); });
            out.push_back(std::move(t));
            size_t k = 0;
            while (k < menu.size() && ++idx[k] == menu[k].size()) idx[k++] = 0;
            if (k == menu.size()) break;
        }
    }
    return out;
}

// FnTable prestructure over sig with the given carriers and the genuine
// cartesian structural maps for exactly the enabled rules
inline monk::Prestructure cartesian_prestructure(
    const monk::Signature& sig,
    const std::map<monk::AtomicType, long long>& carriers,
    const monk::RuleSet& rules,
    std::map<std::string, monk::ConcreteArrow> funs,
    const std::string& name = "scratch") {
    monk::Prestructure m;
    m.name = name;
    m.sig = sig;
    m.kind = monk::ConcreteArrow::Kind::FnTable;
    m.type_map = std::map<monk::AtomicType, long long>(carriers.begin(),
                                                       carriers.end());
    m.fun_map = std::move(funs);
    for (const auto& a : sig.types) {
        long long ca = carriers.at(a);
        if (rules.weakening) m.pi[a] = monk::discard_table(ca);
        if (rules.contraction) m.delta[a] = monk::copy_table(ca);
        if (rules.effective_exchange())
            for (const auto& b : sig.types)
                m.tau[{a, b}] = monk::swap_table(carriers.at(b), ca);
    }
    return m;
}

} // namespace testkit
