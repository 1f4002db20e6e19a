#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellhyp {

using cd = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cd I{0.0, 1.0};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct IndeterminateError : Error { using Error::Error; };

// log of v on the branch closest to ref
inline cd log_near(cd v, cd ref) {
    cd l = std::log(v);
    double k = std::round((ref.imag() - l.imag()) / (2 * pi));
    return {l.real(), l.imag() + 2 * pi * k};
}

inline long mod(long x, long N) { return ((x % N) + N) % N; }

inline double rel_err(cd a, cd b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace ellhyp
