#pragma once

#include <stdexcept>
#include <string>

namespace percoplanar {

// Bad input data: malformed edges, out-of-range parameters, broken preconditions.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A seeded construction ran out of its retry budget.
struct generation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cost guard tripped (e.g. cycle enumeration on a too-dense graph).
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File and parsing failures; carries the offending path or line.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sweep configuration problems (unknown keys, empty grids, bad values).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace percoplanar
