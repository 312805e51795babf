#pragma once

#include <stdexcept>
#include <string>

namespace g2sp {

// Bad argument to a toolkit operation (wrong dimension, out-of-range
// parameter, non-orthogonal gauge, ...).
class param_error : public std::invalid_argument {
public:
    explicit param_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure (NaN objective, eigensolver stagnation, degenerate
// random construction).  `detail` carries whatever diagnostic the failing
// routine had on hand, e.g. a minimizer iteration log.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what, std::string detail = {})
        : std::runtime_error(what), detail_(std::move(detail)) {}
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
};

// File I/O failure; the message names the path.
class io_error : public std::runtime_error {
public:
    io_error(const std::string& what, const std::string& path)
        : std::runtime_error(what + ": " + path), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace g2sp
