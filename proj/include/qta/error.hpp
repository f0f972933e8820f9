#pragma once

#include <stdexcept>
#include <string>

namespace qta {

enum class errc {
    invalid_parameter,
    tail_too_heavy,
    not_normalized,
    path_explosion,
    nyquist_violation,
    parse_error,
    io_error,
};

inline const char* to_string(errc c) {
    switch (c) {
        case errc::invalid_parameter: return "invalid_parameter";
        case errc::tail_too_heavy: return "tail_too_heavy";
        case errc::not_normalized: return "not_normalized";
        case errc::path_explosion: return "path_explosion";
        case errc::nyquist_violation: return "nyquist_violation";
        case errc::parse_error: return "parse_error";
        case errc::io_error: return "io_error";
    }
    return "unknown";
}

/// Exception carrying a machine-readable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace qta
