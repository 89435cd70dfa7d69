#pragma once

#include <stdexcept>
#include <string>

namespace niep {

/// Error taxonomy shared by the whole pipeline. The CLI maps kinds to
/// process exit codes: input-level problems exit 1, method-level failures
/// (the construction family cannot realize the list) exit 2.
enum class ErrKind {
    Parse,
    ConjugateClosure,
    NoPerron,
    InfeasibleAlphas,
    InfeasibleDiagonal,
    InfeasibleCut,
    InfeasibleBeta,
    InfeasibleParam,
    WrongShape,
    Mode,
    Input,
    MethodInapplicable,
    EmptyInterval,
    ShapeConflict,
    ImaginaryResidue,
    Convergence,
};

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

    /// true for failures of the construction method itself (exit code 2),
    /// as opposed to bad input or explicitly pinned infeasible parameters.
    bool method_level() const {
        switch (kind_) {
            case ErrKind::MethodInapplicable:
            case ErrKind::EmptyInterval:
            case ErrKind::ShapeConflict:
            case ErrKind::ImaginaryResidue:
                return true;
            default:
                return false;
        }
    }

    static const char* kind_name(ErrKind k) {
        switch (k) {
            case ErrKind::Parse: return "ParseError";
            case ErrKind::ConjugateClosure: return "ConjugateClosureError";
            case ErrKind::NoPerron: return "NoPerronError";
            case ErrKind::InfeasibleAlphas: return "InfeasibleAlphas";
            case ErrKind::InfeasibleDiagonal: return "InfeasibleDiagonal";
            case ErrKind::InfeasibleCut: return "InfeasibleCut";
            case ErrKind::InfeasibleBeta: return "InfeasibleBeta";
            case ErrKind::InfeasibleParam: return "InfeasibleParam";
            case ErrKind::WrongShape: return "WrongShape";
            case ErrKind::Mode: return "ModeError";
            case ErrKind::Input: return "InputError";
            case ErrKind::MethodInapplicable: return "MethodInapplicable";
            case ErrKind::EmptyInterval: return "EmptyInterval";
            case ErrKind::ShapeConflict: return "ShapeConflict";
            case ErrKind::ImaginaryResidue: return "ImaginaryResidue";
            case ErrKind::Convergence: return "ConvergenceFailure";
        }
        return "Error";
    }
    const char* kind_name() const { return kind_name(kind_); }

  private:
    ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace niep
