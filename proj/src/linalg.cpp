#include "linalg.hpp"

#include <cmath>
#include <limits>

namespace qvd::detail {

bool solve_dense(std::vector<Real> a, std::vector<Real> b, int n, std::vector<Real>& x) {
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (abs(a[r * n + c]) > abs(a[piv * n + c])) piv = r;
        if (a[piv * n + c] == 0) return false;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            std::swap(b[c], b[piv]);
        }
        for (int r = c + 1; r < n; ++r) {
            Real f = a[r * n + c] / a[c * n + c];
            if (f == 0) continue;
            for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            b[r] -= f * b[c];
        }
    }
    x.assign(n, Real(0));
    for (int r = n - 1; r >= 0; --r) {
        Real s = b[r];
        for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
        x[r] = s / a[r * n + r];
    }
    return true;
}

double condition_inf(const std::vector<Real>& a, int n) {
    auto row_norm = [n](const std::vector<Real>& m) {
        Real best = 0;
        for (int r = 0; r < n; ++r) {
            Real s = 0;
            for (int k = 0; k < n; ++k) s += abs(m[r * n + k]);
            if (s > best) best = s;
        }
        return best;
    };
    std::vector<Real> inv(n * n, Real(0));
    for (int c = 0; c < n; ++c) {
        std::vector<Real> e(n, Real(0)), col;
        e[c] = 1;
        if (!solve_dense(a, e, n, col)) return std::numeric_limits<double>::infinity();
        for (int r = 0; r < n; ++r) inv[r * n + c] = col[r];
    }
    Real k = row_norm(a) * row_norm(inv);
    return static_cast<double>(k);
}

}  // namespace qvd::detail
