#pragma once

#include <stdexcept>
#include <string>

namespace monk {

// every kernel failure carries a stable machine-readable code plus a message.
// codes: LengthMismatch, UnboundVariable, SizeMismatch, RuleDisabled,
// ArityMismatch, ContextClash, MalformedNode, UnknownConstant, TypeError,
// NotDerivable, SignatureMismatch, NotPurelyFunctional, NotInCategory,
// Unsupported, UnknownAxiom, NonDerivableSide, IndexOutOfRange,
// StructureUnverified, ShapeMismatch, ParseError, IoError.
struct error : std::runtime_error {
    std::string code;
    error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw error(code, msg);
}

} // namespace monk
