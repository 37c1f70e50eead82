#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quasifold {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: scalar text, JSON documents, inconsistent shapes.
class input_error : public error {
public:
    using error::error;
};

class parse_error : public input_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : input_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class domain_mismatch : public error {
public:
    using error::error;
};

class division_by_zero : public error {
public:
    using error::error;
};

/// Sign of a parameter-field element is not decidable from coefficient signs.
class indeterminate_sign : public error {
public:
    using error::error;
};

class dimension_mismatch : public error {
public:
    using error::error;
};

class singular_matrix : public error {
public:
    using error::error;
};

class rank_deficient : public error {
public:
    using error::error;
};

/// A polytope vertex lies on more facets than the dimension.
class simplicity_error : public error {
public:
    using error::error;
};

class no_witness_found : public error {
public:
    using error::error;
};

/// A structural check on a fundamental triple failed (simpliciality, quasirationality).
class validation_error : public error {
public:
    using error::error;
};

}  // namespace quasifold
