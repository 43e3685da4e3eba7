#pragma once

#include <stdexcept>

namespace anderson {

// Entry-condition violations that are not plain argument-domain errors
// (those use std::invalid_argument).
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace anderson
