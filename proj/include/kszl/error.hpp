#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kszl {

/// Failure categories surfaced by the library. The CLI maps these onto
/// exit codes (input errors -> 2, budget errors -> 3).
enum class ErrorCode {
    ZeroInverse,
    NotInvertible,
    FieldMismatch,
    DimensionMismatch,
    NotInSpan,
    SyntaxError,
    NonQuadraticRelation,
    InhomogeneousRelation,
    UnknownGenerator,
    UnknownAlgebra,
    NonLinearImage,
    NameCollision,
    BudgetExceeded,
    DegreeOverflow,
    NotAnAutomorphism,
    RelationNotPreserved,
    RelationDimMismatch,
    VerificationFailed,
    NotFrobenius,
    TruncationTooShallow,
    NotFiniteDimensional,
    ZeroParameter,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failures carry a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, const std::string& what)
        : Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
          line_(line), col_(col) {}

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

class RelationNotPreserved : public Error {
public:
    explicit RelationNotPreserved(std::size_t index)
        : Error(ErrorCode::RelationNotPreserved,
                "image of relation " + std::to_string(index) + " is not in the target relation space"),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace kszl
