#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gridmodal {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter outside its documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Kron reduction hit a (numerically) zero pivot.
class ReductionError : public Error {
public:
    using Error::Error;
};

/// The equilibrium solver could not find an operating point.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// Dense linear algebra failure (eigen solver, matrix exponential).
class NumericError : public Error {
public:
    using Error::Error;
};

/// State-space assembly received inconsistent pieces.
class AssemblyError : public Error {
public:
    using Error::Error;
};

/// Requested input/output channel does not exist on a model.
class ChannelError : public Error {
public:
    using Error::Error;
};

struct Issue {
    std::string path;     // JSON-pointer-like key path, e.g. "machines[0].R"
    std::string message;
};

/// Scenario document failed to parse or validate. Carries every issue found.
class ScenarioError : public Error {
public:
    explicit ScenarioError(std::vector<Issue> issues);

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

}  // namespace gridmodal
