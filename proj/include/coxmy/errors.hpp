#pragma once

#include <stdexcept>
#include <string>

namespace coxmy {

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeEntries : std::runtime_error {
    explicit NegativeEntries(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& what, long iterations, double residual)
        : std::runtime_error(what), iterations(iterations), residual(residual) {}
    long iterations;
    double residual;
};

struct NotErgodic : std::runtime_error {
    explicit NotErgodic(const std::string& what) : std::runtime_error(what) {}
};

struct NoExitState : std::runtime_error {
    explicit NoExitState(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidBlocks : std::runtime_error {
    explicit InvalidBlocks(const std::string& what) : std::runtime_error(what) {}
};

struct NotTransient : std::runtime_error {
    explicit NotTransient(const std::string& what) : std::runtime_error(what) {}
};

struct CapacityExceeded : std::runtime_error {
    explicit CapacityExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coxmy
