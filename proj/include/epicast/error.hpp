#pragma once

#include <stdexcept>
#include <string>

namespace epicast {

// Base class for every error raised by the library. Subclasses carry the
// category so callers (and the CLI) can report them uniformly.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    TrainingError(const std::string& what, std::size_t epoch, std::size_t restart)
        : Error(what + " (epoch " + std::to_string(epoch) + ", restart " +
                std::to_string(restart) + ")"),
          epoch_(epoch), restart_(restart) {}

    std::size_t epoch() const noexcept { return epoch_; }
    std::size_t restart() const noexcept { return restart_; }

private:
    std::size_t epoch_;
    std::size_t restart_;
};

}  // namespace epicast
