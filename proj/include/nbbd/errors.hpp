#ifndef NBBD_ERRORS_HPP
#define NBBD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nbbd {

// Requested object would exceed the configured entry cap.
class SizeCapError : public std::runtime_error {
public:
    explicit SizeCapError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact solve hit a rank-deficient square system.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

// Pseudoinverse/projection requested for a matrix without full column rank.
class RankDeficientError : public std::runtime_error {
public:
    explicit RankDeficientError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative norm computation failed to meet its tolerance within the cap.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simplex cycling guard exhausted.
class IterationCapError : public std::runtime_error {
public:
    explicit IterationCapError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nbbd

#endif // NBBD_ERRORS_HPP
