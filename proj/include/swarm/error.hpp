#pragma once

#include <stdexcept>
#include <string>

namespace swarm {

// Every failure surfaced by the library carries a short machine-readable
// code ("malformed-line", "busy", "brain-unavailable", ...) next to the
// human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    explicit Error(std::string code) : Error(code, code) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace swarm
