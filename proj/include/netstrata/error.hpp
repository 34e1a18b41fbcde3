#pragma once

#include <stdexcept>
#include <string>

namespace netstrata {

// Library-wide error. `code` is a stable machine-readable tag used by the
// CLI when emitting structured error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

}  // namespace netstrata
