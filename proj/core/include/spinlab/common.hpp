#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace spinlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error categories map onto CLI exit codes: domain -> 2, budget -> 3.
enum class ErrorKind { argument, domain, budget };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ArgumentError : Error {
    explicit ArgumentError(const std::string& w) : Error(ErrorKind::argument, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
struct BudgetError : Error {
    explicit BudgetError(const std::string& w) : Error(ErrorKind::budget, w) {}
};

// Real number extended by an explicit -infinity. Arithmetic never touches a
// floating -inf; callers branch on `finite`.
struct ExtReal {
    bool finite = true;
    double value = 0.0;

    static ExtReal neg_inf() { return {false, 0.0}; }
    static ExtReal of(double v) { return {true, v}; }

    double or_lowest() const { return finite ? value : std::numeric_limits<double>::lowest(); }
};

inline ExtReal operator+(ExtReal a, ExtReal b) {
    if (!a.finite || !b.finite) return ExtReal::neg_inf();
    return ExtReal::of(a.value + b.value);
}
inline bool operator<(ExtReal a, ExtReal b) {
    if (!b.finite) return false;
    if (!a.finite) return true;
    return a.value < b.value;
}
inline ExtReal safe_log(double x) { return x > 0.0 ? ExtReal::of(std::log(x)) : ExtReal::neg_inf(); }

// x ln x with the 0 ln 0 = 0 convention.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace spinlab
