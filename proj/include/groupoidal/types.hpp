#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace groupoidal {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Index of a morphism in its groupoid's canonical (lexicographic) order.
using MorphismIndex = std::size_t;
/// Index of an object in its groupoid's canonical (lexicographic) order.
using ObjectIndex = std::size_t;

/// Comparison thresholds shared by every module.
struct Tolerance {
  /// Absolute componentwise equality threshold.
  double eq = 1e-9;
  /// Eigenvalue clustering threshold used when splitting representations.
  double cluster = 1e-7;
};

inline constexpr Tolerance kDefaultTolerance{};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dangling id, missing map entry or similar: the input is not even a
/// candidate groupoid, so no axiom check makes sense.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  explicit UnknownId(const std::string& id) : Error("unknown id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class NotComposable : public Error {
 public:
  NotComposable(std::string left, std::string right, std::string left_source, std::string right_range)
      : Error("'" + left + "' and '" + right + "' are not composable: s(" + left + ") = " + left_source +
              " but r(" + right + ") = " + right_range),
        left_source_(std::move(left_source)),
        right_range_(std::move(right_range)) {}

  const std::string& left_source() const noexcept { return left_source_; }
  const std::string& right_range() const noexcept { return right_range_; }

 private:
  std::string left_source_;
  std::string right_range_;
};

class NotConnected : public Error {
 public:
  using Error::Error;
};

/// Operands live on different groupoids.
class BaseMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace groupoidal
