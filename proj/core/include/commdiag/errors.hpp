#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commdiag {

// Base of every failure raised by the library. The CLI maps the three
// categories onto distinct exit codes.
class Error : public std::runtime_error {
public:
    enum class Category { input, check, numerical };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(Category::input, what) {}
};

class InvalidMatrix : public Error {
public:
    explicit InvalidMatrix(const std::string& what) : Error(Category::input, what) {}
};

class InvalidPermutation : public Error {
public:
    explicit InvalidPermutation(const std::string& what) : Error(Category::input, what) {}
};

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& what) : Error(Category::input, what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(Category::input, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + what),
          line_(line),
          column_(column),
          detail_(what) {}

    // 1-based position in the input text.
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    // The message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(Category::input, what) {}
};

class NotCommuting : public Error {
public:
    NotCommuting(double residual, const std::string& what)
        : Error(Category::check, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class NotStarCommuting : public Error {
public:
    NotStarCommuting(double residual, const std::string& what)
        : Error(Category::check, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class NoCorrespondence : public Error {
public:
    explicit NoCorrespondence(const std::string& what) : Error(Category::check, what) {}
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError(double pivot, const std::string& what)
        : Error(Category::numerical, what), pivot_(pivot) {}
    double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

class NotDiagonalizable : public Error {
public:
    explicit NotDiagonalizable(const std::string& what) : Error(Category::numerical, what) {}
};

class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& what) : Error(Category::numerical, what) {}
};

class RankDeficientCluster : public Error {
public:
    explicit RankDeficientCluster(const std::string& what) : Error(Category::numerical, what) {}
};

class AmbiguousClustering : public Error {
public:
    explicit AmbiguousClustering(const std::string& what) : Error(Category::numerical, what) {}
};

class BlockLeakage : public Error {
public:
    BlockLeakage(double residual, const std::string& what)
        : Error(Category::numerical, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class InternalDiagnostic : public Error {
public:
    explicit InternalDiagnostic(const std::string& what) : Error(Category::numerical, what) {}
};

}  // namespace commdiag
