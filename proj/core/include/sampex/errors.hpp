#pragma once

// Error hierarchy shared by the whole library.  The CLI maps these onto
// process exit codes: validation/io -> 2, capacity -> 3, discrepancy -> 4.

#include <stdexcept>
#include <string>

namespace sampex {

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad inputs: malformed files, out-of-domain values, contract misuse.
class validation_error : public error {
public:
    using error::error;
};

// An exhaustive operation would exceed its cap (subset enumeration,
// feature-space enumeration, pool powerset).  Carries the offending size
// in the message; sizes that overflow are reported as "exceeds cap".
class capacity_error : public error {
public:
    using error::error;
};

// A function was handed an argument violating its documented contract
// (e.g. a non-envelope where an envelope is required).
class contract_error : public validation_error {
public:
    using validation_error::validation_error;
};

// File system / input stream problems.
class io_error : public validation_error {
public:
    using validation_error::validation_error;
};

} // namespace sampex
