#pragma once

#include <stdexcept>
#include <string>

namespace levylab {

/// Adaptive integration could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_rel_error)
        : std::runtime_error(what), achieved_rel_error_(achieved_rel_error) {}

    double achieved_rel_error() const { return achieved_rel_error_; }

private:
    double achieved_rel_error_;
};

/// A simulated path hit its event cap before terminating.
class EventCapExceeded : public std::runtime_error {
public:
    explicit EventCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Monte Carlo noise dominates the signal a fit needs.
class InsufficientSignal : public std::runtime_error {
public:
    explicit InsufficientSignal(const std::string& what) : std::runtime_error(what) {}
};

/// Bad key, value, or file in an experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace levylab
