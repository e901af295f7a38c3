// Error helpers shared across the grid2x core library.
#ifndef GRID2X_ERROR_HPP_
#define GRID2X_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace grid2x {

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond)
    fail(msg);
}

}  // namespace grid2x

#endif
