#pragma once

#include <stdexcept>
#include <string>

namespace quatlat {

/* Precondition failures reject inadmissible input (CLI exit code 1);
 * validation failures mean a construction did not certify (exit code 2). */
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace quatlat
