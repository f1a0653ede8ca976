#pragma once

#include <stdexcept>
#include <string>

namespace zetakit {

// Error taxonomy mirrors the CLI exit codes.
struct ZkError : std::runtime_error {
    int exit_code;
    ZkError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

struct UsageError : ZkError {
    explicit UsageError(const std::string& msg) : ZkError(1, msg) {}
};

// Malformed input files, grammar violations, non-prime characteristic, and similar.
struct InputError : ZkError {
    explicit InputError(const std::string& msg) : ZkError(2, msg) {}
};

// An enumeration would exceed the configured candidate budget. Never silent.
struct BudgetError : ZkError {
    explicit BudgetError(const std::string& msg) : ZkError(3, msg) {}
};

// Rational reconstruction found no candidate matching the guard window.
struct NoMatchError : ZkError {
    explicit NoMatchError(const std::string& msg) : ZkError(4, msg) {}
};

// An internal invariant failed (inconsistent counts, broken identity, ...).
struct InvariantError : ZkError {
    explicit InvariantError(const std::string& msg) : ZkError(5, msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvariantError(msg);
}

}  // namespace zetakit
