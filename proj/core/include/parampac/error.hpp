#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parampac {

enum class Errc {
    Parse,
    Semantic,
    BoundError,
    UnknownParam,
    MissingParam,
    OutOfBox,
    RowSumViolation,
    NegativeProbability,
    DivisionByZero,
    IntervalDivisionByZero,
    ZeroDenominator,
    MissingReward,
    SingularSystem,
    TooLarge,
    SymbolicZeroDenominator,
    NotAlmostSure,
    BadStatParam,
    TooFewSamples,
    LpFailure,
    IterationLimit,
    OracleFailure,
    BadNorm,
    QuadratureFailure,
    CenterSingular,
    InvalidArgument,
    Io,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library is an Error carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Syntax or semantic error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(Errc code, std::size_t line, std::size_t column, std::string expected,
               std::string found);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string expected_;
    std::string found_;
};

/// Raised when a value oracle fails on one sample; index is the sample position.
class OracleFailure : public Error {
public:
    OracleFailure(std::size_t index, const std::string& cause)
        : Error(Errc::OracleFailure,
                "oracle failed at sample " + std::to_string(index) + ": " + cause),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace parampac
