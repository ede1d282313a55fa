#include "monk/format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "monk/error.hpp"

namespace monk {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail("ParseError", msg); }

// -------- tokens --------

struct Tokens {
    std::vector<std::string> toks;
    size_t at = 0;

    bool done() const { return at >= toks.size(); }
    const std::string& peek() const {
        static const std::string none;
        return done() ? none : toks[at];
    }
    std::string next() {
        if (done()) bad("unexpected end of input");
        return toks[at++];
    }
    void expect(const std::string& t) {
        std::string got = next();
        if (got != t) bad("expected '" + t + "', got '" + got + "'");
    }
    bool accept(const std::string& t) {
        if (!done() && toks[at] == t) {
            ++at;
            return true;
        }
        return false;
    }
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool ident_start(const std::string& s) {
    return !s.empty() &&
           (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

Tokens lex(const std::string& text) {
    Tokens tk;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '|' && i + 1 < text.size() && text[i + 1] == '-') {
            tk.toks.push_back("|-");
            i += 2;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            tk.toks.push_back("->");
            i += 2;
            continue;
        }
        if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
            tk.toks.push_back("=>");
            i += 2;
            continue;
        }
        if (ident_char(c) ||
            (c == '-' && i + 1 < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            size_t j = i + 1;
            while (j < text.size() && ident_char(text[j])) ++j;
            tk.toks.push_back(text.substr(i, j - i));
            i = j;
            continue;
        }
        if (std::string("(),*:=[];").find(c) != std::string::npos) {
            tk.toks.push_back(std::string(1, c));
            ++i;
            continue;
        }
        bad("stray character '" + std::string(1, c) + "'");
    }
    return tk;
}

long long int_tok(Tokens& tk) {
    std::string s = tk.next();
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        bad("expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) bad("expected an integer, got '" + s + "'");
    return v;
}

std::string ident_tok(Tokens& tk) {
    std::string s = tk.next();
    if (!ident_start(s)) bad("expected an identifier, got '" + s + "'");
    return s;
}

// -------- term grammar --------

RawTerm term_tok(Tokens& tk);

RawTerm atom_tok(Tokens& tk) {
    if (tk.accept("(")) {
        RawTerm t = term_tok(tk);
        tk.expect(")");
        return t;
    }
    std::string id = ident_tok(tk);
    if (id == "I") return RawTerm::make_empty();
    if (tk.accept("(")) {
        std::vector<RawTerm> args;
        if (!tk.accept(")")) {
            args.push_back(term_tok(tk));
            while (tk.accept(",")) args.push_back(term_tok(tk));
            tk.expect(")");
        }
        return RawTerm::app(id, std::move(args));
    }
    return RawTerm::var(id);
}

RawTerm term_tok(Tokens& tk) {
    std::vector<RawTerm> factors;
    factors.push_back(atom_tok(tk));
    while (tk.accept("*")) factors.push_back(atom_tok(tk));
    return factors.size() == 1 ? factors[0] : RawTerm::tensor(std::move(factors));
}

Context context_tok(Tokens& tk) {
    Context ctx;
    while (!tk.done() && tk.peek() != "|-") {
        ContextEntry e;
        e.var = ident_tok(tk);
        tk.expect(":");
        e.type = ident_tok(tk);
        ctx.push_back(e);
    }
    return ctx;
}

// a type sequence running to the end of the given stops; the empty sequence
// must be spelled I
TypeSeq typeseq_tok(Tokens& tk, const std::vector<std::string>& stops) {
    TypeSeq ts;
    if (tk.accept("I")) return ts;
    auto stopped = [&] {
        if (tk.done()) return true;
        for (const std::string& s : stops)
            if (tk.peek() == s) return true;
        return false;
    };
    while (!stopped()) ts.push_back(ident_tok(tk));
    if (ts.empty()) fail("ParseError", "expected a type sequence");
    return ts;
}

// -------- lines --------

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::string strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

// -------- printing --------

std::string show_term(const RawTerm& t) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return "I";
    case RawTerm::Kind::Var: return t.name;
    case RawTerm::Kind::App: {
        std::string out = t.name + "(";
        for (size_t i = 0; i < t.args.size(); ++i) {
            if (i) out += ",";
            out += show_term(t.args[i]);
        }
        return out + ")";
    }
    case RawTerm::Kind::Tensor: {
        std::string out;
        for (size_t i = 0; i < t.args.size(); ++i) {
            if (i) out += " * ";
            out += show_term(t.args[i]);
        }
        return out;
    }
    }
    return "I";
}

std::string show_context(const Context& ctx) {
    std::string out;
    for (size_t i = 0; i < ctx.size(); ++i) {
        if (i) out += " ";
        out += ctx[i].var + ":" + ctx[i].type;
    }
    return out;
}

std::string show_sequent(const Sequent& s) {
    std::string ctx = show_context(s.context);
    return (ctx.empty() ? "" : ctx + " ") + "|- " + show_term(s.term) + " : " +
           show_typeseq(s.codomain);
}

std::string show_formula(const Formula& f) {
    std::string ctx = show_context(f.context);
    return (ctx.empty() ? "" : ctx + " ") + "|- " + show_term(f.left) + " = " +
           show_term(f.right) + " : " + show_typeseq(f.codomain);
}

std::string show_rule_set(const RuleSet& r) {
    if (r == RuleSet::make_none()) return "none";
    if (r == RuleSet::make_all()) return "all";
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) out += " ";
        out += name;
    };
    if (r.weakening) add("weakening");
    if (r.exchange) add("exchange");
    if (r.contraction) add("contraction");
    return out;
}

std::string show_fn(const FiniteFn& f) {
    std::string out = "[";
    for (size_t i = 0; i < f.map.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(f.map[i]);
    }
    return out + "] : " + std::to_string(f.dom) + " -> " + std::to_string(f.cod);
}

std::string show_typed_arrow(const TypedStructuralArrow& a) {
    std::string out = show_typeseq(a.source) + " => " + show_typeseq(a.target) + " [";
    for (size_t i = 0; i < a.fn.map.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(a.fn.map[i]);
    }
    return out + "]";
}

namespace {

const char* derivation_rule_name(Derivation::Rule r) {
    switch (r) {
    case Derivation::Rule::Variables: return "variables";
    case Derivation::Rule::Functions: return "functions";
    case Derivation::Rule::Substitution: return "substitution";
    case Derivation::Rule::Unit: return "unit";
    case Derivation::Rule::Tensor: return "tensor";
    case Derivation::Rule::Weakening: return "weakening";
    case Derivation::Rule::Exchange: return "exchange";
    case Derivation::Rule::Contraction: return "contraction";
    }
    return "?";
}

const char* proof_rule_name(ProofTree::Rule r) {
    switch (r) {
    case ProofTree::Rule::Axiom: return "axiom";
    case ProofTree::Rule::Reflexivity: return "reflexivity";
    case ProofTree::Rule::Symmetry: return "symmetry";
    case ProofTree::Rule::Transitivity: return "transitivity";
    case ProofTree::Rule::Substitution: return "substitution";
    case ProofTree::Rule::Tensor: return "tensor";
    case ProofTree::Rule::Weakening: return "weakening";
    case ProofTree::Rule::Exchange: return "exchange";
    case ProofTree::Rule::Contraction: return "contraction";
    }
    return "?";
}

std::string perm_data(const std::vector<int>& perm) {
    std::string out;
    for (int v : perm) out += " " + std::to_string(v);
    return out;
}

void dump_derivation(const Derivation& d, int depth, std::string& out) {
    out.append(2 * static_cast<size_t>(depth), ' ');
    out += derivation_rule_name(d.rule);
    switch (d.rule) {
    case Derivation::Rule::Functions: out += " " + d.constant; break;
    case Derivation::Rule::Weakening:
    case Derivation::Rule::Contraction:
        out += " " + std::to_string(d.pos) + " " + std::to_string(d.len);
        break;
    case Derivation::Rule::Exchange: out += perm_data(d.perm); break;
    default: break;
    }
    out += " :: " + show_sequent(d.conclusion) + "\n";
    for (const Derivation& p : d.premises) dump_derivation(p, depth + 1, out);
}

void dump_proof(const ProofTree& p, int depth, std::string& out) {
    out.append(2 * static_cast<size_t>(depth), ' ');
    out += proof_rule_name(p.rule);
    switch (p.rule) {
    case ProofTree::Rule::Axiom: out += " " + p.axiom; break;
    case ProofTree::Rule::Weakening:
    case ProofTree::Rule::Contraction:
        out += " " + std::to_string(p.pos) + " " + std::to_string(p.len);
        break;
    case ProofTree::Rule::Exchange: out += perm_data(p.perm); break;
    default: break;
    }
    out += " :: " + show_formula(p.conclusion) + "\n";
    for (const ProofTree& q : p.premises) dump_proof(q, depth + 1, out);
}

} // namespace

std::string show_derivation(const Derivation& d) {
    std::string out = std::string(derivation_header) + "\n";
    dump_derivation(d, 0, out);
    return out;
}

std::string show_proof(const ProofTree& p) {
    std::string out = std::string(proof_header) + "\n";
    dump_proof(p, 0, out);
    return out;
}

std::string show_layered(const LayeredForm& lf) {
    std::string out = "layers: " + std::to_string(lf.layers.size()) + "\n";
    for (size_t i = 0; i < lf.layers.size(); ++i) {
        out += "layer " + std::to_string(i) + ":";
        if (lf.layers[i].empty()) {
            out += " I";
        } else {
            for (size_t j = 0; j < lf.layers[i].size(); ++j) {
                const Slot& s = lf.layers[i][j];
                out += j ? " * " : " ";
                out += s.kind == Slot::Kind::Identity ? "id:" + s.type : s.constant;
            }
        }
        out += "\n";
    }
    return out;
}

std::string show_normal(const NormalDump& n) {
    std::string out = std::string(normal_header) + "\n";
    out += "sequent: " + show_sequent(n.sequent) + "\n";
    out += "weakening: " + show_typed_arrow(n.weakening) + "\n";
    out += "contraction: " + show_typed_arrow(n.contraction) + "\n";
    out += "exchange: " + show_typed_arrow(n.exchange) + "\n";
    out += "functional: " + show_sequent(n.functional) + "\n";
    out += show_layered(n.layers);
    return out;
}

std::string show_canonical(const CanonicalTerm& t) {
    if (t.kind == CanonicalTerm::Kind::Bottom) return "_|_";
    if (t.kind == CanonicalTerm::Kind::NegBottom) return "~_|_";
    struct Piece {
        int weight;
        std::string text;
    };
    std::vector<Piece> ps;
    for (const CanonicalTerm::Atom& a : t.atoms)
        ps.push_back({a.index, (a.negated ? "~x" : "x") + std::to_string(a.index)});
    for (const CanonicalTerm& s : t.subterms)
        ps.push_back({s.weight(), "~(" + show_canonical(s) + ")"});
    std::sort(ps.begin(), ps.end(),
              [](const Piece& a, const Piece& b) { return a.weight < b.weight; });
    std::string out;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) out += " v ";
        out += ps[i].text;
    }
    return out;
}

std::string show_report(const StructureReport& r) {
    std::string out = std::string(report_header) + "\n";
    for (const ReportEntry& e : r.entries) {
        out += e.id + (e.instance.empty() ? "" : " [" + e.instance + "]") + ": ";
        if (e.pass) {
            out += "PASS";
        } else {
            out += "FAIL";
            if (e.witness >= 0) out += " (witness " + std::to_string(e.witness) + ")";
        }
        out += "\n";
    }
    out += std::string("result: ") + (r.verified() ? "PASS" : "FAIL") + "\n";
    return out;
}

// -------- parsing --------

RawTerm parse_term(const std::string& text) {
    Tokens tk = lex(text);
    RawTerm t = term_tok(tk);
    if (!tk.done()) bad("trailing input after term: '" + tk.peek() + "'");
    return t;
}

Sequent parse_sequent(const std::string& text) {
    Tokens tk = lex(text);
    Sequent s;
    s.context = context_tok(tk);
    tk.expect("|-");
    s.term = term_tok(tk);
    tk.expect(":");
    s.codomain = typeseq_tok(tk, {});
    if (!tk.done()) bad("trailing input after sequent: '" + tk.peek() + "'");
    return s;
}

Formula parse_formula(const std::string& text) {
    Tokens tk = lex(text);
    Formula f;
    f.context = context_tok(tk);
    tk.expect("|-");
    f.left = term_tok(tk);
    tk.expect("=");
    f.right = term_tok(tk);
    tk.expect(":");
    f.codomain = typeseq_tok(tk, {});
    if (!tk.done()) bad("trailing input after formula: '" + tk.peek() + "'");
    return f;
}

FiniteFn parse_fn(const std::string& text) {
    Tokens tk = lex(text);
    FiniteFn f;
    tk.expect("[");
    while (!tk.accept("]")) f.map.push_back(static_cast<int>(int_tok(tk)));
    tk.expect(":");
    f.dom = static_cast<int>(int_tok(tk));
    tk.expect("->");
    f.cod = static_cast<int>(int_tok(tk));
    if (!tk.done()) bad("trailing input after function");
    if (static_cast<int>(f.map.size()) != f.dom)
        bad("function table length disagrees with its domain");
    for (int v : f.map)
        if (v < 0 || v >= f.cod)
            fail("ShapeMismatch", "function entry outside the codomain");
    return f;
}

TypedStructuralArrow parse_typed_arrow(const std::string& text) {
    Tokens tk = lex(text);
    TypeSeq src = typeseq_tok(tk, {"=>"});
    tk.expect("=>");
    TypeSeq tgt = typeseq_tok(tk, {"["});
    FiniteFn f;
    tk.expect("[");
    while (!tk.accept("]")) f.map.push_back(static_cast<int>(int_tok(tk)));
    if (!tk.done()) bad("trailing input after arrow");
    f.dom = static_cast<int>(tgt.size());
    f.cod = static_cast<int>(src.size());
    return make_typed_arrow(std::move(src), std::move(tgt), std::move(f));
}

// -------- theory files --------

namespace {

void infer_pieces(const RawTerm& t, const Context& ctx, const Signature& sig,
                  TypeSeq& out) {
    switch (t.kind) {
    case RawTerm::Kind::Empty: return;
    case RawTerm::Kind::Var: {
        for (const ContextEntry& e : ctx)
            if (e.var == t.name) {
                out.push_back(e.type);
                return;
            }
        fail("UnboundVariable", "variable '" + t.name + "' is not in the context");
    }
    case RawTerm::Kind::App: out.push_back(sig.constant(t.name).output); return;
    case RawTerm::Kind::Tensor:
        for (const RawTerm& f : t.args) infer_pieces(f, ctx, sig, out);
        return;
    }
}

TypeSeq infer_codomain(const RawTerm& t, const Context& ctx, const Signature& sig) {
    TypeSeq out;
    infer_pieces(t, ctx, sig, out);
    return out;
}

// returns the content lines after checking the version header
std::vector<std::string> body_lines(const std::string& text, const char* header,
                                    const char* what) {
    std::vector<std::string> lines;
    bool seen_header = false;
    for (const std::string& raw : split_lines(text)) {
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (!seen_header) {
            if (line != header)
                bad(std::string(what) + " must start with '" + header + "'");
            seen_header = true;
            continue;
        }
        lines.push_back(line);
    }
    if (!seen_header) bad(std::string(what) + " is empty");
    return lines;
}

} // namespace

Theory parse_theory(const std::string& text) {
    Theory th;
    th.rules = RuleSet::make_none();
    for (const std::string& line : body_lines(text, theory_header, "theory file")) {
        Tokens tk = lex(line);
        std::string key = ident_tok(tk);
        if (key == "theory") {
            th.name = ident_tok(tk);
        } else if (key == "rules") {
            std::string w = ident_tok(tk);
            if (w == "none") {
                th.rules = RuleSet::make_none();
            } else if (w == "all") {
                th.rules = RuleSet::make_all();
            } else {
                th.rules = RuleSet::make_none();
                while (true) {
                    if (w == "weakening") th.rules.weakening = true;
                    else if (w == "exchange") th.rules.exchange = true;
                    else if (w == "contraction") th.rules.contraction = true;
                    else bad("unknown structural rule '" + w + "'");
                    if (tk.done()) break;
                    w = ident_tok(tk);
                }
            }
        } else if (key == "type") {
            th.signature.types.push_back(ident_tok(tk));
        } else if (key == "op") {
            Constant c;
            c.name = ident_tok(tk);
            tk.expect(":");
            c.inputs = typeseq_tok(tk, {"->"});
            tk.expect("->");
            c.output = ident_tok(tk);
            th.signature.constants.push_back(c);
        } else if (key == "axiom") {
            Axiom ax;
            ax.name = ident_tok(tk);
            tk.expect("(");
            Context ctx;
            while (!tk.accept(")")) {
                ContextEntry e;
                e.var = ident_tok(tk);
                tk.expect(":");
                e.type = ident_tok(tk);
                ctx.push_back(e);
            }
            tk.expect(":");
            RawTerm left = term_tok(tk);
            tk.expect("=");
            RawTerm right = term_tok(tk);
            TypeSeq lc = infer_codomain(left, ctx, th.signature);
            TypeSeq rc = infer_codomain(right, ctx, th.signature);
            if (lc != rc)
                fail("TypeError", "axiom '" + ax.name + "' equates terms of types " +
                                      show_typeseq(lc) + " and " + show_typeseq(rc));
            ax.formula = {ctx, left, right, lc};
            th.axioms.push_back(ax);
        } else {
            bad("unknown directive '" + key + "'");
        }
        if (!tk.done()) bad("trailing input on '" + key + "' line");
    }
    return th;
}

// -------- model files --------

namespace {

std::vector<long long> table_payload(Tokens& tk) {
    std::vector<long long> t;
    tk.expect("[");
    while (!tk.accept("]")) {
        if (tk.peek() == ";") bad("';' belongs to matrix payloads");
        t.push_back(int_tok(tk));
    }
    return t;
}

Scalar scalar_tok(Tokens& tk) {
    std::string s = tk.next();
    bool ok = !s.empty();
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (i == 0 && c == '-' && s.size() > 1) continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) ok = false;
    }
    if (!ok) bad("expected a number, got '" + s + "'");
    return Scalar(s);
}

// rows separated by ';', row-major, row count = codomain dimension
std::vector<Scalar> matrix_payload(Tokens& tk, long long dom, long long cod,
                                   const std::string& what) {
    tk.expect("[");
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> cur;
    while (!tk.accept("]")) {
        if (tk.accept(";")) {
            rows.push_back(cur);
            cur.clear();
            continue;
        }
        cur.push_back(scalar_tok(tk));
    }
    if (!cur.empty() || (rows.empty() && cod == 0)) rows.push_back(cur);
    if (static_cast<long long>(rows.size()) != cod)
        bad(what + ": expected " + std::to_string(cod) + " rows, got " +
            std::to_string(rows.size()));
    std::vector<Scalar> flat;
    for (const std::vector<Scalar>& r : rows) {
        if (static_cast<long long>(r.size()) != dom)
            bad(what + ": expected " + std::to_string(dom) + " columns");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
}

} // namespace

Prestructure parse_model(const std::string& text, const Signature& sig) {
    Prestructure m;
    m.sig = sig;
    m.kind = ConcreteArrow::Kind::FnTable;
    m.rig = Semiring::booleans();
    bool saw_target = false;
    bool symmetric = false;

    auto size_of_type = [&](const AtomicType& a) -> long long {
        auto it = m.type_map.find(a);
        if (it == m.type_map.end())
            bad("no carrier declared for type '" + a + "'");
        return it->second;
    };
    auto one_type = [&](Tokens& tk) -> AtomicType {
        if (tk.peek() == "[") {
            if (sig.types.size() != 1)
                bad("type name required unless the signature has a single type");
            return sig.types[0];
        }
        AtomicType a = ident_tok(tk);
        if (!sig.has_type(a)) bad("unknown type '" + a + "'");
        return a;
    };
    auto payload = [&](Tokens& tk, long long dom, long long cod,
                       const std::string& what) -> ConcreteArrow {
        if (m.kind == ConcreteArrow::Kind::FnTable)
            return fn_arrow(dom, cod, table_payload(tk));
        return mat_arrow(m.rig, dom, cod, matrix_payload(tk, dom, cod, what));
    };

    for (const std::string& line : body_lines(text, model_header, "model file")) {
        Tokens tk = lex(line);
        std::string key = ident_tok(tk);
        if (key == "model") {
            m.name = ident_tok(tk);
        } else if (key == "target") {
            std::string w = ident_tok(tk);
            if (w == "finfn") {
                m.kind = ConcreteArrow::Kind::FnTable;
            } else if (w == "mat") {
                m.kind = ConcreteArrow::Kind::Matrix;
                std::string r = ident_tok(tk);
                if (r == "bool") m.rig = Semiring::booleans();
                else if (r == "int") m.rig = Semiring::integers();
                else if (r == "zmod") m.rig = Semiring::mod(int_tok(tk));
                else bad("unknown semiring '" + r + "'");
            } else {
                bad("unknown target '" + w + "'");
            }
            saw_target = true;
        } else if (key == "carrier" || key == "dim") {
            AtomicType a = ident_tok(tk);
            if (!sig.has_type(a)) bad("unknown type '" + a + "'");
            m.type_map[a] = int_tok(tk);
        } else if (key == "fun") {
            std::string name = ident_tok(tk);
            const Constant& c = sig.constant(name);
            long long dom = 1;
            for (const AtomicType& a : c.inputs) dom *= size_of_type(a);
            m.fun_map[name] = payload(tk, dom, size_of_type(c.output), "fun " + name);
        } else if (key == "pi") {
            AtomicType a = one_type(tk);
            m.pi[a] = payload(tk, size_of_type(a), 1, "pi " + a);
        } else if (key == "tau") {
            AtomicType a = one_type(tk);
            AtomicType b = tk.peek() == "[" ? a : one_type(tk);
            long long na = size_of_type(a), nb = size_of_type(b);
            m.tau[{a, b}] = payload(tk, nb * na, na * nb, "tau " + a + "," + b);
        } else if (key == "delta") {
            AtomicType a = one_type(tk);
            long long na = size_of_type(a);
            m.delta[a] = payload(tk, na, na * na, "delta " + a);
        } else if (key == "symmetric") {
            tk.accept(":");
            std::string w = ident_tok(tk);
            if (w == "true") symmetric = true;
            else if (w != "false") bad("symmetric takes true or false");
        } else {
            bad("unknown directive '" + key + "'");
        }
        if (!tk.done()) bad("trailing input on '" + key + "' line");
    }
    if (!saw_target) bad("model file lacks a target line");
    if (symmetric) {
        for (const AtomicType& a : sig.types)
            for (const AtomicType& b : sig.types) {
                if (m.tau.count({a, b})) continue;
                ConcreteArrow sw = swap_table(size_of_type(b), size_of_type(a));
                m.tau[{a, b}] =
                    m.kind == ConcreteArrow::Kind::Matrix ? fn_to_matrix(m.rig, sw) : sw;
            }
    }
    return m;
}

// -------- tree files --------

namespace {

struct TreeLine {
    int depth = 0;
    std::string head;
    std::string tail;
};

std::vector<TreeLine> tree_lines(const std::string& text, const char* header,
                                 const char* what) {
    std::vector<TreeLine> out;
    bool seen_header = false;
    for (const std::string& raw : split_lines(text)) {
        if (trim(raw).empty()) continue;
        if (!seen_header) {
            if (trim(raw) != header)
                bad(std::string(what) + " must start with '" + header + "'");
            seen_header = true;
            continue;
        }
        size_t indent = 0;
        while (indent < raw.size() && raw[indent] == ' ') ++indent;
        if (indent % 2) bad("odd indentation; tree nodes indent by two spaces");
        size_t sep = raw.find(" :: ");
        if (sep == std::string::npos) bad("node line lacks ' :: '");
        TreeLine tl;
        tl.depth = static_cast<int>(indent / 2);
        tl.head = trim(raw.substr(indent, sep - indent));
        tl.tail = trim(raw.substr(sep + 4));
        out.push_back(tl);
    }
    if (!seen_header) bad(std::string(what) + " is empty");
    if (out.empty()) bad(std::string(what) + " has no nodes");
    if (out[0].depth != 0) bad("the root node must not be indented");
    return out;
}

Derivation derivation_node(const TreeLine& tl) {
    Derivation d;
    Tokens tk = lex(tl.head);
    std::string rule = ident_tok(tk);
    if (rule == "variables") d.rule = Derivation::Rule::Variables;
    else if (rule == "functions") d.rule = Derivation::Rule::Functions;
    else if (rule == "substitution") d.rule = Derivation::Rule::Substitution;
    else if (rule == "unit") d.rule = Derivation::Rule::Unit;
    else if (rule == "tensor") d.rule = Derivation::Rule::Tensor;
    else if (rule == "weakening") d.rule = Derivation::Rule::Weakening;
    else if (rule == "exchange") d.rule = Derivation::Rule::Exchange;
    else if (rule == "contraction") d.rule = Derivation::Rule::Contraction;
    else bad("unknown derivation rule '" + rule + "'");
    switch (d.rule) {
    case Derivation::Rule::Functions: d.constant = ident_tok(tk); break;
    case Derivation::Rule::Weakening:
    case Derivation::Rule::Contraction:
        d.pos = static_cast<int>(int_tok(tk));
        d.len = static_cast<int>(int_tok(tk));
        break;
    case Derivation::Rule::Exchange:
        while (!tk.done()) d.perm.push_back(static_cast<int>(int_tok(tk)));
        break;
    default: break;
    }
    if (!tk.done()) bad("trailing data on '" + rule + "' node");
    d.conclusion = parse_sequent(tl.tail);
    return d;
}

ProofTree proof_node(const TreeLine& tl) {
    ProofTree p;
    Tokens tk = lex(tl.head);
    std::string rule = ident_tok(tk);
    if (rule == "axiom") p.rule = ProofTree::Rule::Axiom;
    else if (rule == "reflexivity") p.rule = ProofTree::Rule::Reflexivity;
    else if (rule == "symmetry") p.rule = ProofTree::Rule::Symmetry;
    else if (rule == "transitivity") p.rule = ProofTree::Rule::Transitivity;
    else if (rule == "substitution") p.rule = ProofTree::Rule::Substitution;
    else if (rule == "tensor") p.rule = ProofTree::Rule::Tensor;
    else if (rule == "weakening") p.rule = ProofTree::Rule::Weakening;
    else if (rule == "exchange") p.rule = ProofTree::Rule::Exchange;
    else if (rule == "contraction") p.rule = ProofTree::Rule::Contraction;
    else bad("unknown proof rule '" + rule + "'");
    switch (p.rule) {
    case ProofTree::Rule::Axiom: p.axiom = ident_tok(tk); break;
    case ProofTree::Rule::Weakening:
    case ProofTree::Rule::Contraction:
        p.pos = static_cast<int>(int_tok(tk));
        p.len = static_cast<int>(int_tok(tk));
        break;
    case ProofTree::Rule::Exchange:
        while (!tk.done()) p.perm.push_back(static_cast<int>(int_tok(tk)));
        break;
    default: break;
    }
    if (!tk.done()) bad("trailing data on '" + rule + "' node");
    p.conclusion = parse_formula(tl.tail);
    return p;
}

template <typename Node, Node (*Make)(const TreeLine&)>
Node build_tree(const std::vector<TreeLine>& lines, size_t& i, int depth) {
    Node n = Make(lines[i]);
    ++i;
    while (i < lines.size() && lines[i].depth > depth) {
        if (lines[i].depth != depth + 1) bad("indentation jumps a level");
        n.premises.push_back(build_tree<Node, Make>(lines, i, depth + 1));
    }
    return n;
}

} // namespace

Derivation parse_derivation(const std::string& text) {
    std::vector<TreeLine> lines = tree_lines(text, derivation_header, "derivation");
    size_t i = 0;
    Derivation d = build_tree<Derivation, derivation_node>(lines, i, 0);
    if (i != lines.size()) bad("derivation has more than one root");
    return d;
}

ProofTree parse_proof(const std::string& text) {
    std::vector<TreeLine> lines = tree_lines(text, proof_header, "proof");
    size_t i = 0;
    ProofTree p = build_tree<ProofTree, proof_node>(lines, i, 0);
    if (i != lines.size()) bad("proof has more than one root");
    return p;
}

// -------- normal dumps --------

namespace {

std::string tagged(const std::string& line, const std::string& tag) {
    if (line.rfind(tag + ": ", 0) != 0) bad("expected a '" + tag + ":' line");
    return line.substr(tag.size() + 2);
}

std::vector<Slot> parse_layer(const std::string& text) {
    Tokens tk = lex(text);
    std::vector<Slot> slots;
    if (tk.accept("I")) {
        if (!tk.done()) bad("an empty layer is written as a lone I");
        return slots;
    }
    while (true) {
        Slot s;
        std::string w = ident_tok(tk);
        if (w == "id") {
            tk.expect(":");
            s.kind = Slot::Kind::Identity;
            s.type = ident_tok(tk);
        } else {
            s.kind = Slot::Kind::Apply;
            s.constant = w;
        }
        slots.push_back(s);
        if (tk.done()) break;
        tk.expect("*");
    }
    return slots;
}

} // namespace

NormalDump parse_normal(const std::string& text) {
    std::vector<std::string> lines;
    for (const std::string& raw : split_lines(text)) {
        std::string line = trim(raw);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty() || lines[0] != normal_header)
        bad(std::string("normal dump must start with '") + normal_header + "'");
    size_t i = 1;
    auto need = [&]() -> const std::string& {
        if (i >= lines.size()) bad("normal dump ends early");
        return lines[i++];
    };
    NormalDump n;
    n.sequent = parse_sequent(tagged(need(), "sequent"));
    n.weakening = parse_typed_arrow(tagged(need(), "weakening"));
    n.contraction = parse_typed_arrow(tagged(need(), "contraction"));
    n.exchange = parse_typed_arrow(tagged(need(), "exchange"));
    n.functional = parse_sequent(tagged(need(), "functional"));
    Tokens tk = lex(tagged(need(), "layers"));
    long long count = int_tok(tk);
    if (!tk.done() || count < 0) bad("malformed layer count");
    for (long long k = 0; k < count; ++k) {
        std::string line = need();
        std::string tag = "layer " + std::to_string(k);
        n.layers.layers.push_back(parse_layer(tagged(line, tag)));
    }
    if (i != lines.size()) bad("trailing lines after the normal dump");
    return n;
}

} // namespace monk
