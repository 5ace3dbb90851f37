#ifndef FRACMORREY_TEST_HELPERS_HPP
#define FRACMORREY_TEST_HELPERS_HPP

#include <cmath>
#include <vector>

#include "fracmorrey/functions.hpp"
#include "fracmorrey/geometry.hpp"

namespace fmtest {

inline fracmorrey::Domain line(double a, double b, int n) { return fracmorrey::Domain({{a, b}}, n); }
inline fracmorrey::Domain square(double a, double b, int n) { return fracmorrey::Domain({{a, b}, {a, b}}, n); }

inline fracmorrey::FunctionDescriptor unit_indicator() {
  return fracmorrey::FunctionDescriptor::indicator({fracmorrey::RegionKind::Ball, {0.0}, 1.0});
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace fmtest

#endif
