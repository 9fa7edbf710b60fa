#pragma once

#include <stdexcept>
#include <string>

namespace toricstab {

// Error taxonomy mirrored by the CLI exit codes: schema -> 64,
// precondition -> 65, unsupported -> 66.
enum class ErrorKind { Schema, Precondition, Unsupported };

class ToricError : public std::runtime_error {
public:
    ToricError(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_schema(const std::string& msg) {
    throw ToricError(ErrorKind::Schema, msg);
}
[[noreturn]] inline void fail_precondition(const std::string& msg) {
    throw ToricError(ErrorKind::Precondition, msg);
}
[[noreturn]] inline void fail_unsupported(const std::string& msg) {
    throw ToricError(ErrorKind::Unsupported, msg);
}

} // namespace toricstab
