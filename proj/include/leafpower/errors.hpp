#pragma once

#include <stdexcept>
#include <string>

namespace leafpower {

struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct unsupported_cycle_length : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct size_limit : std::length_error {
    using std::length_error::length_error;
};

// Raised when provenance or intermediate state is inconsistent. Indicates a bug.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace leafpower
