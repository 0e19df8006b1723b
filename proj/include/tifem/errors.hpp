#pragma once

#include <stdexcept>
#include <string>

namespace tifem {

class DegenerateDenominator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularStiffness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownBoundaryTag : public std::runtime_error {
 public:
  explicit UnknownBoundaryTag(const std::string& tag)
      : std::runtime_error("unknown boundary tag: " + tag) {}
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingReference : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tifem
