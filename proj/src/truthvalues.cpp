#include "monk/truthvalues.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "monk/error.hpp"

namespace monk {

namespace {

void check_table(const TruthTable& t) {
    if (t.arity < 0 || t.values.size() != (size_t)1 << t.arity)
        fail("ShapeMismatch", "truth table of arity " + std::to_string(t.arity) +
                                  " needs " + std::to_string((size_t)1 << t.arity) +
                                  " entries, got " + std::to_string(t.values.size()));
}

// variable 1 is the slowest bit of the row index
int bit_of(int index, int var, int arity) { return (index >> (arity - var)) & 1; }

} // namespace

bool depends_on(const TruthTable& t, int i) {
    check_table(t);
    if (i < 1 || i > t.arity)
        fail("IndexOutOfRange", "variable " + std::to_string(i) +
                                    " outside arity " + std::to_string(t.arity));
    int step = 1 << (t.arity - i);
    for (int idx = 0; idx < (int)t.values.size(); ++idx)
        if (((idx >> (t.arity - i)) & 1) == 0 && t.values[idx] != t.values[idx + step])
            return true;
    return false;
}

// -------- canonical terms --------

int CanonicalTerm::weight() const {
    int w = INT32_MAX;
    if (!atoms.empty()) w = std::min(w, atoms.front().index);
    if (!subterms.empty()) w = std::min(w, subterms.front().weight());
    return w;
}

std::vector<int> CanonicalTerm::variables() const {
    std::vector<int> out;
    for (const Atom& a : atoms) out.push_back(a.index);
    for (const CanonicalTerm& s : subterms) {
        std::vector<int> inner = s.variables();
        out.insert(out.end(), inner.begin(), inner.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool CanonicalTerm::operator==(const CanonicalTerm& o) const {
    return kind == o.kind && atoms == o.atoms && subterms == o.subterms;
}

bool well_formed(const CanonicalTerm& t, bool as_subterm) {
    if (t.kind != CanonicalTerm::Kind::Join)
        return !as_subterm && t.atoms.empty() && t.subterms.empty();
    if (t.factor_count() < (as_subterm ? 2 : 1)) return false;
    for (size_t i = 0; i < t.atoms.size(); ++i) {
        if (t.atoms[i].index < 1) return false;
        if (i > 0 && t.atoms[i - 1].index >= t.atoms[i].index) return false;
    }
    for (size_t i = 0; i < t.subterms.size(); ++i) {
        if (!well_formed(t.subterms[i], true)) return false;
        if (i > 0 && t.subterms[i - 1].weight() >= t.subterms[i].weight()) return false;
    }
    // factors carry pairwise disjoint variable sets
    std::vector<int> seen;
    size_t total = 0;
    for (const CanonicalTerm::Atom& a : t.atoms) seen.push_back(a.index), ++total;
    for (const CanonicalTerm& s : t.subterms) {
        std::vector<int> inner = s.variables();
        total += inner.size();
        seen.insert(seen.end(), inner.begin(), inner.end());
    }
    std::sort(seen.begin(), seen.end());
    return std::unique(seen.begin(), seen.end()) == seen.end() && seen.size() == total;
}

namespace {

void check_indices(const CanonicalTerm& t, int arity) {
    for (const CanonicalTerm::Atom& a : t.atoms)
        if (a.index < 1 || a.index > arity)
            fail("IndexOutOfRange", "variable x" + std::to_string(a.index) +
                                        " is outside arity " + std::to_string(arity));
    for (const CanonicalTerm& s : t.subterms) check_indices(s, arity);
}

bool eval_at(const CanonicalTerm& t, int index, int arity) {
    switch (t.kind) {
    case CanonicalTerm::Kind::Bottom: return false;
    case CanonicalTerm::Kind::NegBottom: return true;
    case CanonicalTerm::Kind::Join: break;
    }
    for (const CanonicalTerm::Atom& a : t.atoms) {
        bool v = bit_of(index, a.index, arity) != 0;
        if (a.negated ? !v : v) return true;
    }
    for (const CanonicalTerm& s : t.subterms)
        if (!eval_at(s, index, arity)) return true;
    return false;
}

} // namespace

TruthTable evaluate(const CanonicalTerm& t, int arity) {
    if (arity < 0) fail("IndexOutOfRange", "negative arity");
    check_indices(t, arity);
    TruthTable out;
    out.arity = arity;
    out.values.resize((size_t)1 << arity);
    for (int idx = 0; idx < (int)out.values.size(); ++idx)
        out.values[idx] = eval_at(t, idx, arity);
    return out;
}

namespace {

struct Factor {
    bool is_atom;
    CanonicalTerm::Atom atom;
    const CanonicalTerm* sub;
    int weight;
};

std::vector<Factor> ordered_factors(const CanonicalTerm& t) {
    std::vector<Factor> fs;
    for (const CanonicalTerm::Atom& a : t.atoms) fs.push_back({true, a, nullptr, a.index});
    for (const CanonicalTerm& s : t.subterms) fs.push_back({false, {}, &s, s.weight()});
    std::sort(fs.begin(), fs.end(),
              [](const Factor& a, const Factor& b) { return a.weight < b.weight; });
    return fs;
}

RawTerm var_term(int index) { return RawTerm::var("x" + std::to_string(index)); }

RawTerm neg_term(RawTerm inner) {
    return RawTerm::app("neg", {std::move(inner)});
}

} // namespace

RawTerm canonical_to_raw(const CanonicalTerm& t) {
    if (t.kind == CanonicalTerm::Kind::Bottom) return RawTerm::app("bot", {});
    if (t.kind == CanonicalTerm::Kind::NegBottom)
        return neg_term(RawTerm::app("bot", {}));
    std::vector<Factor> fs = ordered_factors(t);
    RawTerm acc;
    bool first = true;
    for (const Factor& f : fs) {
        RawTerm piece = f.is_atom ? (f.atom.negated ? neg_term(var_term(f.atom.index))
                                                    : var_term(f.atom.index))
                                  : neg_term(canonical_to_raw(*f.sub));
        if (first) {
            acc = std::move(piece);
            first = false;
        } else {
            acc = RawTerm::app("or", {std::move(acc), std::move(piece)});
        }
    }
    return acc;
}

// -------- sufficient sets and classes --------

std::vector<std::vector<int>> minimal_sufficient_sets(const TruthTable& t) {
    check_table(t);
    int n = t.arity;
    std::vector<int> masks;
    for (int m = 0; m < (1 << n); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](int a, int b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<int> sufficient;
    for (int mask : masks) {
        std::vector<int> vars; // 1-based members of the candidate set
        for (int v = 1; v <= n; ++v)
            if (mask & (1 << (v - 1))) vars.push_back(v);
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
            if (!(mask & (1 << (v - 1)))) rest.push_back(v);
        bool found = false;
        for (int va = 0; va < (1 << vars.size()) && !found; ++va) {
            bool forces = true;
            for (int wa = 0; wa < (1 << rest.size()) && forces; ++wa) {
                int idx = 0;
                for (size_t k = 0; k < vars.size(); ++k)
                    if (va & (1 << k)) idx |= 1 << (n - vars[k]);
                for (size_t k = 0; k < rest.size(); ++k)
                    if (wa & (1 << k)) idx |= 1 << (n - rest[k]);
                if (!t.values[idx]) forces = false;
            }
            if (forces) found = true;
        }
        if (found) sufficient.push_back(mask);
    }
    std::vector<std::vector<int>> out;
    for (int mask : sufficient) {
        bool minimal = true;
        for (int other : sufficient)
            if (other != mask && (other & mask) == other) { minimal = false; break; }
        if (!minimal) continue;
        std::vector<int> vars;
        for (int v = 1; v <= n; ++v)
            if (mask & (1 << (v - 1))) vars.push_back(v);
        out.push_back(vars);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> variable_classes(const TruthTable& t) {
    std::vector<std::vector<int>> sets = minimal_sufficient_sets(t);
    int n = t.arity;
    std::vector<int> parent(n + 1);
    for (int v = 0; v <= n; ++v) parent[v] = v;
    std::vector<int> covered;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const std::vector<int>& s : sets)
        for (int v : s) {
            covered.push_back(v);
            parent[find(v)] = find(s.front());
        }
    std::sort(covered.begin(), covered.end());
    covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    std::map<int, std::vector<int>> by_root;
    for (int v : covered) by_root[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, vars] : by_root) out.push_back(vars);
    std::sort(out.begin(), out.end());
    return out;
}

// -------- reconstruction --------

namespace {

// table of t with the variables in keep (ascending) as the new 1..k, the
// rest pinned to fixed_bits
TruthTable restrict_table(const TruthTable& t, const std::vector<int>& keep,
                          const std::vector<int>& fixed_bits) {
    int k = (int)keep.size();
    TruthTable out;
    out.arity = k;
    out.values.resize((size_t)1 << k);
    for (int li = 0; li < (int)out.values.size(); ++li) {
        int idx = 0;
        std::vector<bool> kept(t.arity + 1, false);
        for (int j = 0; j < k; ++j) {
            kept[keep[j]] = true;
            if (bit_of(li, j + 1, k)) idx |= 1 << (t.arity - keep[j]);
        }
        for (int v = 1; v <= t.arity; ++v)
            if (!kept[v] && fixed_bits[v - 1]) idx |= 1 << (t.arity - v);
        out.values[li] = t.values[idx];
    }
    return out;
}

bool constant_table(const TruthTable& t, bool* value) {
    for (bool v : t.values)
        if (v != t.values.front()) return false;
    *value = t.values.front();
    return true;
}

TruthTable negate_table(TruthTable t) {
    for (size_t i = 0; i < t.values.size(); ++i) t.values[i] = !t.values[i];
    return t;
}

// recover the join whose table this is, variables reported through orig.
// a subterm needs two factors or its negation would simplify, so subterm
// calls with a single class bail out; that also bounds the recursion, since
// calls with two or more classes strictly shrink the variable set.
std::optional<CanonicalTerm> rebuild(const TruthTable& t, const std::vector<int>& orig,
                                     bool as_subterm) {
    int n = t.arity;
    for (int v = 1; v <= n; ++v)
        if (!depends_on(t, v)) return std::nullopt;
    std::vector<std::vector<int>> classes = variable_classes(t);
    if (as_subterm && classes.size() < 2) return std::nullopt;
    size_t covered = 0;
    for (const std::vector<int>& c : classes) covered += c.size();
    if ((int)covered != n) return std::nullopt;

    CanonicalTerm out;
    out.kind = CanonicalTerm::Kind::Join;
    for (const std::vector<int>& cls : classes) {
        std::vector<int> outside;
        std::vector<bool> in_cls(n + 1, false);
        for (int v : cls) in_cls[v] = true;
        for (int v = 1; v <= n; ++v)
            if (!in_cls[v]) outside.push_back(v);
        // the least assignment of the other classes silencing their factors
        // is the least one keeping this factor's variables live
        TruthTable g;
        bool found = false;
        for (int oa = 0; oa < (1 << outside.size()) && !found; ++oa) {
            std::vector<int> fixed(n, 0);
            for (size_t k = 0; k < outside.size(); ++k)
                fixed[outside[k] - 1] = bit_of(oa, (int)k + 1, (int)outside.size());
            g = restrict_table(t, cls, fixed);
            bool cv;
            if (!constant_table(g, &cv)) found = true;
        }
        if (!found) return std::nullopt;
        if (cls.size() == 1) {
            CanonicalTerm::Atom a;
            a.index = orig[cls[0] - 1];
            a.negated = g.values[0]; // true at 0 means the variable is negated
            out.atoms.push_back(a);
        } else {
            std::vector<int> sub_orig;
            for (int v : cls) sub_orig.push_back(orig[v - 1]);
            std::optional<CanonicalTerm> sub = rebuild(negate_table(g), sub_orig, true);
            if (!sub || sub->kind != CanonicalTerm::Kind::Join || sub->factor_count() < 2)
                return std::nullopt;
            out.subterms.push_back(std::move(*sub));
        }
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const CanonicalTerm::Atom& a, const CanonicalTerm::Atom& b) {
                  return a.index < b.index;
              });
    std::sort(out.subterms.begin(), out.subterms.end(),
              [](const CanonicalTerm& a, const CanonicalTerm& b) {
                  return a.weight() < b.weight();
              });
    if (!well_formed(out)) return std::nullopt;
    return out;
}

} // namespace

std::optional<Reconstruction> reconstruct(const TruthTable& t) {
    check_table(t);
    int n = t.arity;
    std::vector<int> deps, dummies;
    for (int v = 1; v <= n; ++v)
        (depends_on(t, v) ? deps : dummies).push_back(v);
    bool cv;
    TruthTable h = restrict_table(t, deps, std::vector<int>(n, 0));
    if (constant_table(h, &cv)) {
        if (!deps.empty()) return std::nullopt;
        Reconstruction r;
        r.term.kind = cv ? CanonicalTerm::Kind::NegBottom : CanonicalTerm::Kind::Bottom;
        r.dummies = dummies;
        return r;
    }
    std::optional<CanonicalTerm> core = rebuild(h, deps, false);
    if (!core) return std::nullopt;
    if (evaluate(*core, n) != t) return std::nullopt;
    Reconstruction r;
    r.term = std::move(*core);
    r.dummies = dummies;
    return r;
}

} // namespace monk
