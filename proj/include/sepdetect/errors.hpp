#pragma once

#include <stdexcept>
#include <string>

namespace sepdetect {

/// Raised for malformed arguments: bad shapes, out-of-domain parameters,
/// non-finite entries, unparseable specs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix offered as a density matrix failed one of its defining checks.
class ValidationError : public InvalidInput {
 public:
  enum class Property { Dimensions, Finite, Hermitian, Trace, ImaginaryResidue };

  ValidationError(Property property, const std::string& what)
      : InvalidInput(std::string(name(property)) + ": " + what), property_(property) {}

  Property property() const noexcept { return property_; }

  static const char* name(Property p) noexcept {
    switch (p) {
      case Property::Dimensions: return "dimensions";
      case Property::Finite: return "finite";
      case Property::Hermitian: return "hermitian";
      case Property::Trace: return "trace";
      case Property::ImaginaryResidue: return "imaginary-residue";
    }
    return "unknown";
  }

 private:
  Property property_;
};

}  // namespace sepdetect
