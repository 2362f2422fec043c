#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace collinear {

/// Broad failure class; the CLI maps each kind to an exit code.
enum class ErrorKind { Input, Numerical, Validation };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t col, const std::string& what)
      : Error(ErrorKind::Input, "parse error at row " + std::to_string(row) + ", column " +
                                    std::to_string(col) + ": " + what),
        row_(row),
        col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class MissingColumn : public Error {
 public:
  explicit MissingColumn(const std::string& name)
      : Error(ErrorKind::Input, "missing column '" + name + "'") {}
};

class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error(ErrorKind::Input, "duplicate column name '" + name + "'") {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t pivot)
      : Error(ErrorKind::Numerical,
              "matrix is not positive definite (pivot " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class SingularDesign : public Error {
 public:
  explicit SingularDesign(const std::string& what)
      : Error(ErrorKind::Numerical, "singular design: " + what) {}
};

class ZeroVariance : public Error {
 public:
  explicit ZeroVariance(std::size_t column)
      : Error(ErrorKind::Numerical, "column " + std::to_string(column) + " has zero variance"),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class ApcInfeasible : public Error {
 public:
  explicit ApcInfeasible(const std::string& what)
      : Error(ErrorKind::Numerical, "no all-positive-correlation arrangement: " + what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class InsufficientRows : public ValidationError {
 public:
  InsufficientRows(std::size_t rows, std::size_t params)
      : ValidationError("need more than " + std::to_string(params) + " rows, got " +
                        std::to_string(rows)) {}
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotNested : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TooManyGroups : public ValidationError {
 public:
  explicit TooManyGroups(std::size_t groups)
      : ValidationError("too many groups for exhaustive search: " + std::to_string(groups)) {}
};

class NormalizationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ColumnsMissing : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace collinear
