#pragma once

#include <stdexcept>
#include <string>

namespace tsw {

enum class ErrorKind { Domain, Convergence, Singularity, Validation, Parse, Io };

const char *to_string(ErrorKind kind);

/// Base for every structured failure raised by the toolkit.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Input outside the model's valid domain (overtwist, fully wound string, negative twist).
class DomainError : public Error {
public:
    explicit DomainError(const std::string &what) : Error(ErrorKind::Domain, what) {}
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string &what, double residual, int iterations)
        : Error(ErrorKind::Convergence, what), residual_(residual), iterations_(iterations) {}
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Twist velocity law evaluated too close to zero twist.
class SingularityError : public Error {
public:
    explicit SingularityError(const std::string &what) : Error(ErrorKind::Singularity, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string &what) : Error(ErrorKind::Validation, what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string &what, int line, std::string field = {})
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") +
                                      ": " + what),
          line_(line), field_(std::move(field)) {}
    int line() const noexcept { return line_; }
    const std::string &field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

class IoError : public Error {
public:
    IoError(const std::string &what, std::string path)
        : Error(ErrorKind::Io, path + ": " + what), path_(std::move(path)) {}
    const std::string &path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace tsw
