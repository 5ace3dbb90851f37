#ifndef FRACMORREY_GRAMMAR_HPP
#define FRACMORREY_GRAMMAR_HPP

#include <string>
#include <string_view>

#include "fracmorrey/functions.hpp"

namespace fracmorrey {

// Descriptor mini-language used by configs and the command line.
//
//   functions:  ind(ball(c, r)) | ind(cube(c, r)) | pow(g) | pow(g, <shape>)
//               gauss(c, w) | step(seed, k) | step(seed, k, cube(c, r))
//               sum(f, ...) | scaled(a, f) | zero()
//   weights:    <number> | const(c) | pow(g) | sum(w, ...) | prod(w, ...)
//               scaled(a, w)
//   points:     <number> (broadcast to every axis) | [x1, x2, ...]
//
// step(seed, k) without a support uses the cube of half-side 1 about the
// origin.

FunctionDescriptor parse_function(std::string_view text);
WeightDescriptor parse_weight(std::string_view text);
Shape parse_shape(std::string_view text);
Point parse_point(std::string_view text);

std::string to_string(const FunctionDescriptor& f);
std::string to_string(const WeightDescriptor& v);
std::string to_string(const Shape& s);

}  // namespace fracmorrey

#endif
