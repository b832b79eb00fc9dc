#pragma once

#include <stdexcept>
#include <string>

namespace irsmec {

/// Invalid argument to a model or solver operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Problem instance cannot be satisfied (e.g. required CPU frequency above f_max).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Composite channel gain too small to support offloading.
class DegenerateChannelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar search exhausted its iteration cap without meeting tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem size exceeds an explicit enumeration budget.
class BudgetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace irsmec
