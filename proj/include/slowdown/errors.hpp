#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slowdown {

/// A series whose variance collapsed to zero (within numerical noise), so
/// downstream estimators are undefined.
class DegenerateSeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Design matrix is rank deficient; the normal equations have no unique
/// solution.
class SingularDesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simulated path left the configured explosion bound.
class ExplosionError : public std::runtime_error {
public:
    ExplosionError(std::size_t step, double value, double bound)
        : std::runtime_error("path exploded at step " + std::to_string(step) +
                             " (|u| = " + std::to_string(value) +
                             " > " + std::to_string(bound) + ")"),
          step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// CSV parse or schema failure; carries the 1-based line number when known.
class CsvError : public std::runtime_error {
public:
    explicit CsvError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Remote price endpoint failure after retries, schema drift, or bad config.
class FetchError : public std::runtime_error {
public:
    explicit FetchError(const std::string& msg, int http_status = 0)
        : std::runtime_error(msg), http_status_(http_status) {}

    int http_status() const { return http_status_; }

private:
    int http_status_;
};

}  // namespace slowdown
