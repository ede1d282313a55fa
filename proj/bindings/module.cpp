// thin string-based bindings: parse, run the kernel, print. richer object
// models stay on the C++ side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monk/format.hpp"

namespace py = pybind11;

namespace {

monk::Theory theory_of(const std::string& text) {
    monk::Theory t = monk::parse_theory(text);
    monk::validate_theory(t);
    return t;
}

py::object check(const std::string& theory, const std::string& sequent) {
    monk::Theory t = theory_of(theory);
    std::optional<monk::Derivation> d =
        monk::elaborate(monk::parse_sequent(sequent), t.rules, t.signature);
    if (!d) return py::none();
    return py::str(monk::show_derivation(*d));
}

py::dict factorize(const std::string& theory, const std::string& sequent) {
    monk::Theory t = theory_of(theory);
    monk::Sequent s = monk::parse_sequent(sequent);
    monk::Factorisation f = monk::factorize(s, t.rules, t.signature);
    py::dict out;
    out["structural"] = monk::show_sequent(monk::structural_factor_sequent(s, f));
    out["functional"] = monk::show_sequent(f.functional);
    return out;
}

std::string normalize(const std::string& theory, const std::string& sequent) {
    monk::Theory t = theory_of(theory);
    monk::Sequent s = monk::parse_sequent(sequent);
    monk::Factorisation f = monk::factorize(s, t.rules, t.signature);
    monk::NormalDump dump;
    dump.sequent = monk::canonical_rename(s);
    monk::StructuralNormalForm nf = monk::structural_normal_form(f.structural, t.rules);
    dump.weakening = nf.weakening;
    dump.contraction = nf.contraction;
    dump.exchange = nf.exchange;
    dump.functional = f.functional;
    dump.layers = monk::functional_normal_form(f.functional);
    return monk::show_normal(dump);
}

bool eq(const std::string& theory, const std::string& left, const std::string& right) {
    monk::Theory t = theory_of(theory);
    return monk::term_eq(monk::parse_sequent(left), monk::parse_sequent(right),
                         t.rules, t.signature);
}

py::dict model_check(const std::string& theory, const std::string& model) {
    monk::Theory t = theory_of(theory);
    monk::Prestructure m = monk::parse_model(model, t.signature);
    monk::StructureReport r = monk::model_check(m, t);
    py::dict out;
    out["ok"] = r.verified();
    out["report"] = monk::show_report(r);
    return out;
}

py::object reconstruct(int vars, const std::string& bits) {
    monk::TruthTable t;
    t.arity = vars;
    if (vars < 0 || bits.size() != (size_t)1 << vars)
        monk::fail("ParseError", "table length must be 2^vars");
    for (char c : bits) {
        if (c != '0' && c != '1') monk::fail("ParseError", "table bits must be 0 or 1");
        t.values.push_back(c == '1');
    }
    std::optional<monk::Reconstruction> r = monk::reconstruct(t);
    if (!r) return py::none();
    std::string out = monk::show_canonical(r->term);
    if (!r->dummies.empty()) {
        out += " [dummy:";
        for (int v : r->dummies) out += " x" + std::to_string(v);
        out += "]";
    }
    return py::str(out);
}

std::string prove_check(const std::string& theory, const std::string& proof) {
    monk::Theory t = theory_of(theory);
    return monk::show_formula(monk::check_proof(monk::parse_proof(proof), t));
}

} // namespace

PYBIND11_MODULE(_monk, m) {
    m.doc() = "substructural algebraic theory kernel";
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const monk::error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
    m.def("check", &check, py::arg("theory"), py::arg("sequent"),
          "derivation dump for a sequent, or None when underivable");
    m.def("factorize", &factorize, py::arg("theory"), py::arg("sequent"),
          "structural and functional factors of a derivable sequent");
    m.def("normalize", &normalize, py::arg("theory"), py::arg("sequent"),
          "full normal form dump of a derivable sequent");
    m.def("eq", &eq, py::arg("theory"), py::arg("left"), py::arg("right"),
          "equality in the free theory");
    m.def("model_check", &model_check, py::arg("theory"), py::arg("model"),
          "structure equations plus axioms; dict with ok and report");
    m.def("reconstruct", &reconstruct, py::arg("vars"), py::arg("table"),
          "canonical join term of a truth table, or None when not realizable");
    m.def("prove_check", &prove_check, py::arg("theory"), py::arg("proof"),
          "verify an equational proof tree and return its formula");
}
