#pragma once

#include <random>

#include <doctest.h>

#include "ellhyp/ellhyp.hpp"

namespace testing {

using ellhyp::cd;

inline double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(20240611 + salt); }

inline cd random_tau(std::mt19937_64& g) {
    std::uniform_real_distribution<double> U(0, 1);
    return {U(g) - 0.5, 0.6 + 1.2 * U(g)};
}

}  // namespace testing
