#pragma once

#include <cmath>
#include <complex>

#include "doctest.h"

// absolute-tolerance check, for quantities whose natural scale is O(1) or
// whose target is exactly zero
#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

// relative check against a nonzero reference
#define CHECK_REL(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol)*std::abs(b))

inline double rel_err(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
