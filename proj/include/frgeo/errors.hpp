#pragma once

#include <stdexcept>
#include <string>

namespace frgeo {

// Numerical-domain violations: non-SPD operands, eigenvalues outside the
// domain of a matrix function, degenerate planes, stencils leaving the cone.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (CSV rows, persisted models). Messages carry the
// offending line number where one exists.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment configuration: schema violations, unknown keys, bad flags.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frgeo
