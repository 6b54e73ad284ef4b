#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace polyguard {

// Relative tolerance used by equidistance / area / coverage checks.
// Overridable through the POLYGUARD_TOLERANCE environment variable.
inline double tolerance() {
    static const double tol = [] {
        if (const char* s = std::getenv("POLYGUARD_TOLERANCE")) {
            char* end = nullptr;
            double v = std::strtod(s, &end);
            if (end != s && v > 0 && v < 1) return v;
        }
        return 1e-9;
    }();
    return tol;
}

// Thrown on malformed inputs (maps to CLI exit code 4).
struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an agent budget or retry budget runs out (CLI exit code 3).
struct ResourceExhausted : std::runtime_error {
    explicit ResourceExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a protocol violates a model rule; always a bug, not an input error.
struct ProtocolViolation : std::logic_error {
    explicit ProtocolViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace polyguard
