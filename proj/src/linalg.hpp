#pragma once

#include "qvd/real.hpp"

#include <vector>

namespace qvd::detail {

// Gaussian elimination with partial pivoting on a row-major n x n system.
// Returns false when a pivot vanishes.
bool solve_dense(std::vector<Real> a, std::vector<Real> b, int n, std::vector<Real>& x);

// infinity-norm condition number estimate via explicit inverse
double condition_inf(const std::vector<Real>& a, int n);

}  // namespace qvd::detail
