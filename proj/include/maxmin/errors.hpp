#pragma once

#include <stdexcept>
#include <string>

namespace maxmin {

/// Caller violated a documented precondition (bad sizes, malformed input).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed. Seeing one of these is a bug or a
/// numerical breakdown, never an expected outcome.
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested structure does not exist for this input.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoPolygon : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class NoPolyhedron : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class NoCycle : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class NoCurve : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

/// Degenerate (coplanar or too small) input to the 3D hull.
class DegenerateHull : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

/// An exhaustive oracle was asked to run beyond its size budget.
class BudgetExceeded : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace maxmin
