#pragma once

#include <stdexcept>

namespace covollab {

// Precondition violations declared by the operation contracts.  The CLI
// maps these to usage errors (exit 2).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace covollab
