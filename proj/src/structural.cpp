#include "monk/structural.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace monk {

// -------- finite functions --------

FiniteFn FiniteFn::identity(int n) {
    FiniteFn f;
    f.dom = f.cod = n;
    f.map.resize(n);
    std::iota(f.map.begin(), f.map.end(), 0);
    return f;
}

bool FiniteFn::is_identity() const {
    if (dom != cod) return false;
    for (int j = 0; j < dom; ++j)
        if (map[j] != j) return false;
    return true;
}

bool FiniteFn::operator<(const FiniteFn& o) const {
    if (dom != o.dom) return dom < o.dom;
    if (cod != o.cod) return cod < o.cod;
    return map < o.map;
}

FiniteFn compose_fn(const FiniteFn& f, const FiniteFn& g) {
    if (f.cod != g.dom)
        fail("SizeMismatch", "compose_fn: " + std::to_string(f.cod) + " vs " +
                                 std::to_string(g.dom));
    FiniteFn h;
    h.dom = f.dom;
    h.cod = g.cod;
    h.map.resize(f.dom);
    for (int j = 0; j < f.dom; ++j) h.map[j] = g.map[f.map[j]];
    return h;
}

FiniteFn tensor_fn(const FiniteFn& f, const FiniteFn& g) {
    FiniteFn h;
    h.dom = f.dom + g.dom;
    h.cod = f.cod + g.cod;
    h.map = f.map;
    for (int j = 0; j < g.dom; ++j) h.map.push_back(g.map[j] + f.cod);
    return h;
}

bool is_injective(const FiniteFn& f) {
    std::set<int> seen;
    for (int v : f.map)
        if (!seen.insert(v).second) return false;
    return true;
}

bool is_surjective(const FiniteFn& f) {
    std::vector<bool> hit(f.cod, false);
    for (int v : f.map) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_bijective(const FiniteFn& f) {
    return f.dom == f.cod && is_injective(f);
}

bool is_monotone(const FiniteFn& f) {
    for (int j = 0; j + 1 < f.dom; ++j)
        if (f.map[j] > f.map[j + 1]) return false;
    return true;
}

bool is_permutation(const FiniteFn& f) { return is_bijective(f); }

// -------- generator words --------

FiniteFn step_fn(const GeneratorStep& s, int c) {
    switch (s.kind) {
    case GeneratorStep::Kind::Weaken: {
        if (s.pos < 0 || s.len < 1 || s.pos > c)
            fail("IndexOutOfRange", "weaken step outside cardinal");
        FiniteFn f;
        f.dom = c;
        f.cod = c + s.len;
        for (int j = 0; j < c; ++j) f.map.push_back(j < s.pos ? j : j + s.len);
        return f;
    }
    case GeneratorStep::Kind::Exchange: {
        if (s.pos < 0 || s.pos + 1 >= c)
            fail("IndexOutOfRange", "exchange step outside cardinal");
        FiniteFn f = FiniteFn::identity(c);
        std::swap(f.map[s.pos], f.map[s.pos + 1]);
        return f;
    }
    case GeneratorStep::Kind::Contract: {
        if (s.pos < 0 || s.len < 1 || s.pos + 2 * s.len > c)
            fail("IndexOutOfRange", "contract step outside cardinal");
        FiniteFn f;
        f.dom = c;
        f.cod = c - s.len;
        for (int j = 0; j < c; ++j)
            f.map.push_back(j < s.pos + s.len ? j : j - s.len);
        return f;
    }
    }
    fail("MalformedNode", "unknown generator step");
}

FiniteFn eval_word(const GeneratorWord& w) {
    FiniteFn acc = FiniteFn::identity(w.start);
    for (const auto& s : w.steps) acc = compose_fn(acc, step_fn(s, acc.cod));
    return acc;
}

RuleSet word_rules(const GeneratorWord& w) {
    RuleSet r;
    for (const auto& s : w.steps) {
        if (s.kind == GeneratorStep::Kind::Weaken) r.weakening = true;
        if (s.kind == GeneratorStep::Kind::Exchange) r.exchange = true;
        if (s.kind == GeneratorStep::Kind::Contract) r.contraction = true;
    }
    return r;
}

std::vector<int> canonical_transpositions(const std::vector<int>& perm) {
    std::vector<int> a = perm;
    std::vector<int> swaps;
    for (size_t i = 1; i < a.size(); ++i)
        for (size_t j = i; j > 0 && a[j - 1] > a[j]; --j) {
            std::swap(a[j - 1], a[j]);
            swaps.push_back(static_cast<int>(j - 1));
        }
    return swaps;
}

// the doubled-block swap gadget at position p: insert a point before the
// pair, insert a point after it, then merge the two length-2 blocks.
static void push_swap_gadget(std::vector<GeneratorStep>& steps, int p) {
    steps.push_back({GeneratorStep::Kind::Weaken, p, 1});
    steps.push_back({GeneratorStep::Kind::Weaken, p + 3, 1});
    steps.push_back({GeneratorStep::Kind::Contract, p, 2});
}

GeneratorWord exchange_witness(const std::vector<int>& sigma) {
    FiniteFn check;
    check.dom = check.cod = static_cast<int>(sigma.size());
    check.map = sigma;
    if (!is_permutation(check))
        fail("ShapeMismatch", "exchange_witness needs a permutation");
    GeneratorWord w;
    w.start = static_cast<int>(sigma.size());
    for (int p : canonical_transpositions(sigma)) push_swap_gadget(w.steps, p);
    return w;
}

// -------- membership --------

// stable sort of the domain by image value; p sends each point to its rank,
// g is the weakly increasing function with the same multiset of values, and
// p then g equals f.
static void sort_decompose(const FiniteFn& f, std::vector<int>& p, FiniteFn& g) {
    std::vector<int> ord(f.dom);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(),
                     [&](int a, int b) { return f.map[a] < f.map[b]; });
    p.assign(f.dom, 0);
    for (int r = 0; r < f.dom; ++r) p[ord[r]] = r;
    g.dom = f.dom;
    g.cod = f.cod;
    g.map.clear();
    for (int r = 0; r < f.dom; ++r) g.map.push_back(f.map[ord[r]]);
}

// word for a weakly increasing g: merge each run of equal values down to a
// single point, then insert the missing codomain values in ascending order.
static void push_monotone_word(std::vector<GeneratorStep>& steps, const FiniteFn& g) {
    std::vector<int> values;
    std::vector<int> mult;
    for (int j = 0; j < g.dom; ++j) {
        if (!values.empty() && values.back() == g.map[j])
            ++mult.back();
        else {
            values.push_back(g.map[j]);
            mult.push_back(1);
        }
    }
    for (size_t i = 0; i < values.size(); ++i)
        for (int k = 1; k < mult[i]; ++k)
            steps.push_back({GeneratorStep::Kind::Contract, static_cast<int>(i), 1});
    std::set<int> present(values.begin(), values.end());
    for (int q = 0; q < g.cod; ++q)
        if (!present.count(q))
            steps.push_back({GeneratorStep::Kind::Weaken, q, 1});
}

// contraction admits no closed form: saturate the identity under block
// merges, recording the first word reaching each composite.
static std::optional<GeneratorWord> saturate_contraction(const FiniteFn& f) {
    if (f.dom > 8)
        fail("Unsupported", "contraction-only membership is saturated "
                            "exhaustively and is capped at cardinal 8");
    std::map<FiniteFn, GeneratorWord> seen;
    std::queue<FiniteFn> work;
    FiniteFn id = FiniteFn::identity(f.dom);
    seen[id] = GeneratorWord{f.dom, {}};
    work.push(id);
    while (!work.empty()) {
        FiniteFn cur = work.front();
        work.pop();
        const GeneratorWord& w = seen.at(cur);
        int c = cur.cod;
        for (int len = 1; 2 * len <= c; ++len)
            for (int pos = 0; pos + 2 * len <= c; ++pos) {
                GeneratorStep st{GeneratorStep::Kind::Contract, pos, len};
                FiniteFn next = compose_fn(cur, step_fn(st, c));
                if (seen.count(next)) continue;
                GeneratorWord nw = w;
                nw.steps.push_back(st);
                seen[next] = std::move(nw);
                work.push(next);
            }
    }
    auto it = seen.find(f);
    if (it == seen.end()) return std::nullopt;
    return it->second;
}

std::optional<GeneratorWord> membership(const FiniteFn& f, const RuleSet& s) {
    if (static_cast<int>(f.map.size()) != f.dom)
        fail("ShapeMismatch", "finite function map length differs from domain");
    for (int v : f.map)
        if (v < 0 || v >= f.cod) fail("ShapeMismatch", "map entry out of codomain");

    if (f.is_identity()) return GeneratorWord{f.dom, {}};
    if (s.none()) return std::nullopt;
    if (s.contraction_only()) {
        if (f.dom < f.cod || !is_surjective(f)) return std::nullopt;
        return saturate_contraction(f);
    }

    // closed forms for the other subcategories
    if (!s.contraction && !is_injective(f)) return std::nullopt;
    if (!s.weakening && !is_surjective(f)) return std::nullopt;
    if (!s.exchange && !s.contraction && !is_monotone(f)) return std::nullopt;

    std::vector<int> p;
    FiniteFn g;
    sort_decompose(f, p, g);

    GeneratorWord w;
    w.start = f.dom;
    FiniteFn pf;
    pf.dom = pf.cod = f.dom;
    pf.map = p;
    if (!pf.is_identity()) {
        if (s.exchange)
            for (int q : canonical_transpositions(p))
                w.steps.push_back({GeneratorStep::Kind::Exchange, q, 1});
        else // weakening + contraction derive the swap
            for (int q : canonical_transpositions(p)) push_swap_gadget(w.steps, q);
    }
    push_monotone_word(w.steps, g);
    return w;
}

// -------- typed arrows --------

TypedStructuralArrow make_typed_arrow(TypeSeq source, TypeSeq target, FiniteFn fn) {
    if (fn.dom != static_cast<int>(target.size()) ||
        fn.cod != static_cast<int>(source.size()))
        fail("ShapeMismatch", "typed arrow sizes do not match its function");
    for (int j = 0; j < fn.dom; ++j)
        if (target[j] != source[fn.map[j]])
            fail("ShapeMismatch", "typed arrow violates target[j] = source[fn(j)]");
    return {std::move(source), std::move(target), std::move(fn)};
}

TypedStructuralArrow compose_typed(const TypedStructuralArrow& a,
                                   const TypedStructuralArrow& b) {
    if (a.target != b.source)
        fail("ShapeMismatch", "typed composition needs matching middle object");
    return make_typed_arrow(a.source, b.target, compose_fn(b.fn, a.fn));
}

std::optional<GeneratorWord> typed_membership(const TypedStructuralArrow& a,
                                              const RuleSet& s) {
    make_typed_arrow(a.source, a.target, a.fn); // revalidate the invariant
    return membership(a.fn, s);
}

// -------- structural normal form --------

StructuralNormalForm structural_normal_form(const TypedStructuralArrow& a,
                                            const RuleSet& s) {
    if (s.contraction_only())
        fail("Unsupported", "no structural normal form with contraction alone");
    if (!typed_membership(a, s))
        fail("NotInCategory", "arrow is not generated by the enabled rules");

    const int m = a.fn.cod;
    const int n = a.fn.dom;

    std::vector<int> used; // occurring context positions, ascending
    std::vector<int> mult(m, 0);
    for (int j = 0; j < n; ++j) ++mult[a.fn.map[j]];
    for (int i = 0; i < m; ++i)
        if (mult[i] > 0) used.push_back(i);

    FiniteFn wf; // keeps the used positions
    wf.dom = static_cast<int>(used.size());
    wf.cod = m;
    wf.map = used;
    TypeSeq s0;
    for (int i : used) s0.push_back(a.source[i]);

    FiniteFn cf; // repeats position r of s0 mult-many times
    cf.dom = n;
    cf.cod = wf.dom;
    TypeSeq s1;
    std::vector<int> block_start(used.size(), 0);
    {
        int at = 0;
        for (size_t r = 0; r < used.size(); ++r) {
            block_start[r] = at;
            for (int k = 0; k < mult[used[r]]; ++k) {
                cf.map.push_back(static_cast<int>(r));
                s1.push_back(s0[r]);
                ++at;
            }
        }
    }

    std::vector<int> rank(m, -1);
    for (size_t r = 0; r < used.size(); ++r) rank[used[r]] = static_cast<int>(r);

    FiniteFn ef; // order-preserving within each block of copies
    ef.dom = n;
    ef.cod = n;
    std::vector<int> taken(used.size(), 0);
    for (int j = 0; j < n; ++j) {
        int r = rank[a.fn.map[j]];
        ef.map.push_back(block_start[r] + taken[r]);
        ++taken[r];
    }

    return {make_typed_arrow(a.source, s0, wf), make_typed_arrow(s0, s1, cf),
            make_typed_arrow(s1, a.target, ef)};
}

} // namespace monk
