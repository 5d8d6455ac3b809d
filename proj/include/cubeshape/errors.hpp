#pragma once

#include <stdexcept>

namespace cubeshape {

// Two independent computation routes disagreed (or an internal exactness
// assumption failed). The CLI maps this to exit code 3, distinct from bad
// input (2).
class consistency_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubeshape
