#pragma once

#include <stdexcept>
#include <string>

namespace qentry40 {

/// Library-wide error with a machine-readable category.
class Error : public std::runtime_error {
public:
    enum class Kind {
        NonConvergence,  // truncation cap hit before the tail threshold
        Pole,            // a required denominator factor vanished
        Domain,          // input outside the supported evaluation domain
        BadInput,        // precondition violated (balance, missing termination, ...)
        Indeterminate,   // 0/0 that no limit path could resolve
        Io,
    };

    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace qentry40
