#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bondtherm {

/// Base class for all errors raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration. May carry several messages, each
/// prefixed with the key path it refers to.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message)
        : Error(message), messages_{message} {}

    explicit ConfigError(std::vector<std::string> messages)
        : Error(join(messages)), messages_(std::move(messages)) {}

    [[nodiscard]] const std::vector<std::string>& messages() const { return messages_; }

private:
    static std::string join(const std::vector<std::string>& messages) {
        std::string out;
        for (const auto& m : messages) {
            if (!out.empty()) out += "; ";
            out += m;
        }
        return out;
    }

    std::vector<std::string> messages_;
};

/// A point or box does not fit the grid.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Temperature outside the range where a material law is valid.
class MaterialRangeError : public Error {
public:
    using Error::Error;
};

/// Linear solve or Picard iteration failed.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Simulation state violates a precondition (e.g. nonpositive temperature).
class SolverStateError : public Error {
public:
    using Error::Error;
};

/// Measurement data unusable (too few samples, unparsable lines).
class DataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace bondtherm
