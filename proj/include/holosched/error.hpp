#ifndef HOLOSCHED_ERROR_HPP
#define HOLOSCHED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace holosched {

/// Machine-readable failure categories used across the library.
enum class errc {
    invariant_violation,
    dangling_reference,
    dimension_mismatch,
    degenerate_pivot,
    validation,
    parse,
    io,
};

const char* to_string(errc code) noexcept;

/// Exception carrying an error category plus a human-readable message
/// that names the offending field or entity.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          message_(message) {}

    errc code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }

private:
    errc code_;
    std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw error(code, message);
}

inline const char* to_string(errc code) noexcept {
    switch (code) {
        case errc::invariant_violation: return "invariant violation";
        case errc::dangling_reference: return "dangling reference";
        case errc::dimension_mismatch: return "dimension mismatch";
        case errc::degenerate_pivot: return "degenerate pivot";
        case errc::validation: return "validation error";
        case errc::parse: return "parse error";
        case errc::io: return "io error";
    }
    return "unknown error";
}

} // namespace holosched

#endif
