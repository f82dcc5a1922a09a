#pragma once

#include <stdexcept>

namespace gammalat {

// Malformed or inconsistent input: bad generators, non-unimodular matrices,
// non-equivariant maps, torsion quotients.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size limit was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed: two routes that must agree did not.
class PropertyViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gammalat
