#pragma once

#include <stdexcept>
#include <string>

namespace skg {

struct EmptyCorpusError : std::runtime_error {
    explicit EmptyCorpusError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroVectorError : std::runtime_error {
    explicit ZeroVectorError(const std::string& what) : std::runtime_error(what) {}
};

struct FieldTooLongError : std::runtime_error {
    explicit FieldTooLongError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateKeyError : std::runtime_error {
    explicit DegenerateKeyError(const std::string& what) : std::runtime_error(what) {}
};

struct KeystreamExhausted : std::runtime_error {
    explicit KeystreamExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct DeepFadeError : std::runtime_error {
    explicit DeepFadeError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace skg
