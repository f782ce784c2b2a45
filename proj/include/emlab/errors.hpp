#pragma once

// Error taxonomy shared by all modules. The CLI maps these onto its exit-code
// contract: usage -> 2, resolution/resource -> 3, anything else -> 1.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace emlab {

// Grid or quadrature spacing coarser than the mandated resolution rule
// (dx <= 1/(16*h_j)). Violations are errors, never silent inaccuracy.
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// A work or memory budget would be exceeded (e.g. 3^j expansion term cap).
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solve failed to reach tolerance within the iteration cap.
// Carries the relative-residual history for postmortems.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), history_(std::move(history)) {}
    const std::vector<double>& residual_history() const { return history_; }

private:
    std::vector<double> history_;
};

// A kernel comparison hit a nonpositive kernel cell; carries its location.
class DegenerateCellError : public std::runtime_error {
public:
    DegenerateCellError(const std::string& what, std::size_t cell_index, double x)
        : std::runtime_error(what), cell_index_(cell_index), x_(x) {}
    std::size_t cell_index() const { return cell_index_; }
    double x() const { return x_; }

private:
    std::size_t cell_index_;
    double x_;
};

// Command-line / config misuse.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace emlab
