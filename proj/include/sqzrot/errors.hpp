#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sqzrot {

// All failures carry the module they originate from so the CLI can surface
// provenance ("error [deconvolution]: ...") without unwinding manually.
class error : public std::runtime_error {
public:
    error(std::string module, const std::string& message)
        : std::runtime_error("[" + module + "] " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

// Bad call arguments (shapes, non-finite inputs, incompatible settings).
class argument_error : public error {
public:
    using error::error;
};

// Mathematical domain violations (e.g. log of a non-positive power).
class domain_error : public error {
public:
    using error::error;
};

// Lookups outside a grid's support.
class range_error : public error {
public:
    using error::error;
};

// Malformed external data (CSV rows, config entries); message names the line.
class data_error : public error {
public:
    using error::error;
};

// Non-finite values produced mid-computation.
class numerical_error : public error {
public:
    using error::error;
};

} // namespace sqzrot
