#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sohp {

/// A parameter or input violates a documented domain constraint (e.g. d <= 0).
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Config text could not be parsed; carries the offending position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Tridiagonal factorization hit a vanishing pivot.
class SingularSystemError : public std::runtime_error {
public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested time step exceeds the stability bound.
class CflError : public std::runtime_error {
public:
  explicit CflError(const std::string& what) : std::runtime_error(what) {}
};

/// Spherical chart is invalid: sin(theta) at or below the configured floor.
class ChartSingularityError : public std::runtime_error {
public:
  explicit ChartSingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// A state left the verified-hyperbolic region; integration refuses to continue.
class HyperbolicityError : public std::runtime_error {
public:
  HyperbolicityError(const std::string& what, std::size_t node, double theta)
      : std::runtime_error(what), node_(node), theta_(theta) {}
  std::size_t node() const { return node_; }
  double theta() const { return theta_; }

private:
  std::size_t node_;
  double theta_;
};

/// Ensemble mean velocity too small to define a direction.
class DegenerateMeanError : public std::runtime_error {
public:
  explicit DegenerateMeanError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed quantity failed a numerical sanity bound (residual, finiteness).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sohp
