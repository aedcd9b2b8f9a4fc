#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rackext {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Input that does not describe a well-formed object (bad shape, index out of
/// range, homomorphism not well defined, unparseable file).
class MalformedInput : public Error {
public:
    using Error::Error;
    explicit MalformedInput(const std::string& what) : Error("MalformedInput", what) {}
};

/// A size guard refused to materialize or enumerate a structure.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error("CapExceeded", what) {}
};

/// A precondition on otherwise well-formed data failed (e.g. an input that
/// must be a cocycle is not one).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// Report of the first violated axiom or identity, with a witness tuple.
struct Violation {
    std::string kind;
    std::vector<std::size_t> witness;
    std::string detail;

    std::string describe() const;
};

/// Either a validated value or the violation that prevented validation.
template <typename T>
class Checked {
public:
    Checked(T value) : value_(std::move(value)) {}
    Checked(Violation v) : violation_(std::move(v)) {}

    bool ok() const noexcept { return value_.has_value(); }
    explicit operator bool() const noexcept { return ok(); }

    const T& value() const& {
        if (!value_) throw PreconditionFailed(violation_->kind, violation_->describe());
        return *value_;
    }
    T&& value() && {
        if (!value_) throw PreconditionFailed(violation_->kind, violation_->describe());
        return std::move(*value_);
    }
    const Violation& violation() const { return *violation_; }

private:
    std::optional<T> value_;
    std::optional<Violation> violation_;
};

}  // namespace rackext
