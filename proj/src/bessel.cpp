#include "qvd/bessel.hpp"

#include <algorithm>
#include <cmath>

namespace qvd {

BesselEval j_nu(const Real& x, const QParams& p) {
    if (x < 0) fail(ErrorCode::Domain, "j_nu needs x >= 0");
    return j_series_certified(x, p.q, p.nu, p.precision_digits);
}

Real i_nu(const Real& x, const QParams& p) {
    if (x < 0) fail(ErrorCode::Domain, "i_nu needs x >= 0");
    int P = p.precision_digits + 10;
    PrecisionScope scope(P);
    Real X = promote(x, P), Q = promote(p.q, P), NU = promote(p.nu, P);
    Real q2 = Q * Q, a = pow(Q, 2 * NU + 2), x2 = X * X;
    Real thr = ten_pow(-P, P);
    Real term(1), sum(1), q2n(1);
    int small = 0;
    for (long n = 0; small < 40; ++n) {
        Real num = q2n * q2;
        term *= num * x2 / ((1 - a * q2n) * (1 - num));
        q2n = num;
        sum += term;
        if (!isfinite(sum)) fail(ErrorCode::Overflow, "I_nu exceeds the exponent range");
        small = term <= thr * sum ? small + 1 : 0;
        if (n > 1000000) fail(ErrorCode::NonConvergent, "I_nu series did not terminate");
    }
    return with_digits(sum, p.precision_digits);
}

namespace {

// c(1-q) sum_k q^{k(2nu+2)} phi(q^k) j(q^{n+k}) with 0 < phi <= 1
LatticeEval lorentz_transform(int n, const Real& a, const Lattice& L) {
    double wl = L.w() * L.log10_q();
    auto term = [&](long k, int P, double cut) -> Real {
        if (L.j_bound_log10(n + k) + k * wl < cut) return Real(0, P);
        PrecisionScope scope(P);
        Real A = promote(a, P);
        return L.weight(k, P) * L.j(n + k, P) / (1 + L.qpow(2 * k, P) / (A * A));
    };
    LatticeEval ev = lattice_sum(term, -n, L.work(), SumPolicy::Relative);
    PrecisionScope scope(L.work());
    ev.value = ev.value * L.cq(L.work());
    ev.max_term = ev.max_term * L.cq(L.work());
    return ev;
}

}  // namespace

LatticeEval k_nu_eval(int n, const Lattice& L) {
    PrecisionScope scope(L.work());
    return lorentz_transform(n, Real(1), L);
}

Real k_nu(int n, const Lattice& L) { return k_nu_eval(n, L).value; }

Real g_a(int n, const Real& a, const Lattice& L) {
    if (!(a > 0)) fail(ErrorCode::Domain, "g_a needs a > 0");
    return lorentz_transform(n, a, L).value;
}

WronskianReport wronskian(const Lattice& L, const QGrid& window) {
    const QParams& p = L.params();
    Lattice L1(shift_nu(p, 1));
    QParams p1 = L1.params();
    int lo = window.n_min + 8, hi = window.n_max - 8;
    if (hi - lo < 4) fail(ErrorCode::Window, "window too small for five interior points");
    int c = std::clamp(0, lo + 2, hi - 2);
    PrecisionScope scope(L.work());
    Real denom = 1 - pow(p.q, 2 * p.nu + 2);
    WronskianReport r;
    for (int n = c - 2; n <= c + 2; ++n) {
        Real x = L.qpow(n, L.work());
        Real v = L.weight(n, L.work()) *
                 (k_nu(n, L) * i_nu(x, p1) / denom + k_nu(n, L1) * i_nu(x, p));
        r.points.push_back(n);
        r.values.push_back(v);
    }
    Real mn = *std::min_element(r.values.begin(), r.values.end());
    Real mx = *std::max_element(r.values.begin(), r.values.end());
    Real s = 0;
    for (const auto& v : r.values) s += v;
    r.mean = s / 5;
    r.spread = (mx - mn) / abs(r.mean);
    return r;
}

Real d_nu(const Lattice& L, const QGrid& window) {
    WronskianReport r = wronskian(L, window);
    if (!(r.spread < 10 * L.params().tol))
        fail(ErrorCode::ConstancyViolation,
             "Wronskian combination not constant, spread " + to_decimal(r.spread, 6));
    return r.mean;
}

}  // namespace qvd
