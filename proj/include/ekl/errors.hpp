#pragma once
#include <stdexcept>
#include <string>

namespace ekl {

// library errors carry a machine-readable code plus free-form detail
struct ekl_error : std::runtime_error {
    std::string code;
    ekl_error(std::string code_, const std::string& what_)
        : std::runtime_error(code_ + ": " + what_), code(std::move(code_)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw ekl_error(code, what);
}

} // namespace ekl
