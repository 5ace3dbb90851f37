#ifndef FRACMORREY_ERROR_HPP
#define FRACMORREY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fracmorrey {

// Bad input: parameter out of range, malformed descriptor, unknown config key.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The computation itself failed or produced something the caller forbade
// (non-finite sample, zero denominator where a finite value is required).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

}  // namespace fracmorrey

#endif
