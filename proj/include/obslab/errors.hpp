#pragma once

#include <stdexcept>
#include <string>

namespace obslab {

// Every failure in the library is reported through Error. The kind separates
// bad input (rejected while constructing validated objects), honest negative
// verdicts that are raised as errors by contract, and internal-consistency
// aborts that can only mean a bug in the library itself.
class Error : public std::runtime_error {
public:
    enum class Kind {
        InvalidTable,           // explicit group table fails the group axioms
        NotNormal,              // subgroup fails closure or conjugation tests
        ActionNotDescending,    // action does not preserve the flow-coboundary subgroup
        BudgetExceeded,         // enumeration or solve exceeds the work budget
        NotACocycle,            // operation requires a cocycle input
        NotNormalizedOnFlow,    // windowed 2-cochain nonzero on the pure-flow block
        InvalidXi,              // perturbation cocycle not a torus-valued 2-cocycle
        FlowPartNotCobounding,  // flow part of a characteristic cocycle not exact
        NotCobounding,          // supplied cochain does not cobound the pulled-back cocycle
        NotInZLM,               // subgroup condition for the kernel fails
        FiberViolated,          // fiber compatibility between d1 and nu fails
        TorusCoercionFailed,    // value expected in the designated torus is outside it
        SectionMismatch,        // cross-sections belong to different quotients
        ContextMismatch,        // obstructions compared over different ambient data
        ExactnessViolation,     // an exactness assertion failed (strongest failure)
        VerificationFailed,     // internal re-verification failed: library bug
        IncompatibleModulus,    // demo modulus incompatible with the chosen flow class
        ArithmeticOverflow,     // 64-bit integer arithmetic would overflow
        ParseError,             // problem-description text is malformed
        InvalidArgument,        // malformed request (bad degree, missing object, ...)
    };

    Error(Kind kind, const std::string& msg)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind) {}

    Kind kind() const { return kind_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::InvalidTable: return "InvalidTable";
            case Kind::NotNormal: return "NotNormal";
            case Kind::ActionNotDescending: return "ActionNotDescending";
            case Kind::BudgetExceeded: return "BudgetExceeded";
            case Kind::NotACocycle: return "NotACocycle";
            case Kind::NotNormalizedOnFlow: return "NotNormalizedOnFlow";
            case Kind::InvalidXi: return "InvalidXi";
            case Kind::FlowPartNotCobounding: return "FlowPartNotCobounding";
            case Kind::NotCobounding: return "NotCobounding";
            case Kind::NotInZLM: return "NotInZLM";
            case Kind::FiberViolated: return "FiberViolated";
            case Kind::TorusCoercionFailed: return "TorusCoercionFailed";
            case Kind::SectionMismatch: return "SectionMismatch";
            case Kind::ContextMismatch: return "ContextMismatch";
            case Kind::ExactnessViolation: return "ExactnessViolation";
            case Kind::VerificationFailed: return "VerificationFailed";
            case Kind::IncompatibleModulus: return "IncompatibleModulus";
            case Kind::ArithmeticOverflow: return "ArithmeticOverflow";
            case Kind::ParseError: return "ParseError";
            case Kind::InvalidArgument: return "InvalidArgument";
        }
        return "Error";
    }

    // True for kinds that mean the caller handed us malformed input, as
    // opposed to a mathematical verdict or an internal abort.
    bool is_input_error() const {
        switch (kind_) {
            case Kind::InvalidTable:
            case Kind::NotNormal:
            case Kind::ParseError:
            case Kind::InvalidArgument:
                return true;
            default:
                return false;
        }
    }

private:
    Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, const std::string& msg) {
    throw Error(kind, msg);
}

}  // namespace obslab
