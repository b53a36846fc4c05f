#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opaxiom {

enum class ErrorKind { Parse, Domain, Resource, Convergence, Ambiguity, Precision };

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. Carries the node path of the
/// subterm where evaluation failed, when one is known.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool has_path() const noexcept { return has_path_; }
    const std::string& path() const noexcept { return path_; }
    void set_path(std::string path) {
        path_ = std::move(path);
        has_path_ = true;
    }

private:
    ErrorKind kind_;
    std::string path_;
    bool has_path_ = false;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error(ErrorKind::Parse, message), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error(ErrorKind::Domain, message) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& message) : Error(ErrorKind::Resource, message) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& message)
        : Error(ErrorKind::Convergence, message) {}
};

/// A root-finder probe whose sign could not be resolved at the finest
/// precision allowed (a possible exact tie).
class AmbiguityError : public Error {
public:
    explicit AmbiguityError(const std::string& message) : Error(ErrorKind::Ambiguity, message) {}
};

/// Digits or an enclosure could not be certified.
class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& message) : Error(ErrorKind::Precision, message) {}
};

}  // namespace opaxiom
