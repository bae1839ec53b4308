#pragma once

#include <stdexcept>
#include <string>

namespace pms {

// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Oracle returned a negative, NaN or otherwise unusable perimeter value.
class malformed_oracle_error : public error {
public:
  using error::error;
};

// Instance too large for the requested exhaustive computation.
class size_error : public error {
public:
  using error::error;
};

// Operation not available for this oracle kind (e.g. relative perimeter on a
// plain table oracle).
class unsupported_operation_error : public error {
public:
  using error::error;
};

// The region cannot host the requested N-cluster.
class admissibility_error : public error {
public:
  using error::error;
};

// A required axiom flag is neither declared nor verified.
class axiom_missing_error : public error {
public:
  using error::error;
};

// A mathematically guaranteed relation failed; always indicates an
// implementation bug and carries a witness description.
class theorem_violation_error : public error {
public:
  using error::error;
};

// Float arithmetic could not separate candidate optima; rational mode will.
class numerical_degeneracy_error : public error {
public:
  using error::error;
};

// Torsion domain has a point not linked through positive weights to the
// complement, so the energy is unbounded below.
class coercivity_error : public error {
public:
  using error::error;
};

// Invalid argument outside any more specific category.
class domain_error : public error {
public:
  using error::error;
};

}  // namespace pms
