// vnframes/error.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_ERROR_HPP
#define VNFRAMES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vnframes {

/// Library-wide exception type. Thrown on invalid inputs (bad Cayley
/// tables, dimension mismatches, non-affiliated matrices, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vnframes

#endif  // VNFRAMES_ERROR_HPP
