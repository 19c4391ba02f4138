#pragma once

// Independent reference values in decimal floating point (cpp_dec_float), not
// the mpfr path the library uses.

#include "qvd/real.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <string>

namespace oracle {

using O = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<320>>;

inline O from(const qvd::Real& v) { return O(qvd::to_decimal(v, 110)); }
inline qvd::Real to_real(const O& v, int digits) { return qvd::parse_decimal(v.str(110, std::ios_base::scientific), digits); }

inline O qp(const O& q, long n) {
    O r = 1;
    O b = n >= 0 ? q : 1 / q;
    for (long i = 0; i < (n >= 0 ? n : -n); ++i) r *= b;
    return r;
}

inline O poch(const O& a, const O& q, long n) {
    O r = 1, qi = 1;
    for (long i = 0; i < n; ++i, qi *= q) r *= 1 - a * qi;
    return r;
}

// product (a;q)_N with N large enough that q^N is below 1e-300 * |a|
inline O poch_inf(const O& a, const O& q) {
    O r = 1, qi = 1;
    while (abs(a * qi) > O("1e-310")) {
        r *= 1 - a * qi;
        qi *= q;
    }
    return r;
}

// sum_n s^n q^{n(n+1)} x^{2n} / ((q^2;q^2)_n (q^{2nu+2};q^2)_n), s = -1 for j, +1 for I
inline O bessel_series(const O& x, const O& q, const O& nu, int s) {
    O q2 = q * q, a = pow(q, 2 * nu + 2), x2 = x * x;
    O sum = 1, term = 1, qq = 1;  // qq = q^{2n}
    for (int n = 0; n < 4000; ++n) {
        term *= s * qq * q2 * x2 / ((1 - a * qq) * (1 - qq * q2));
        qq *= q2;
        sum += term;
        if (n > 10 && abs(term) < O("1e-300") * (1 + abs(sum))) break;
    }
    return sum;
}

inline O c_q_nu(const O& q, const O& nu) {
    return poch_inf(pow(q, 2 * nu + 2), q * q) / poch_inf(q * q, q * q) / (1 - q);
}

// c(1-q) sum_k q^{k(2nu+2)} phi(q^k) j(q^{n+k}) summed over a fixed index range
template <class Phi>
O lattice_transform(long n, const O& q, const O& nu, Phi phi, long k_lo, long k_hi) {
    O s = 0;
    for (long k = k_lo; k <= k_hi; ++k) {
        O t = qp(q, k);
        s += pow(t, 2 * nu + 2) * phi(t) * bessel_series(qp(q, n + k), q, nu, -1);
    }
    return c_q_nu(q, nu) * (1 - q) * s;
}

inline double rel(const qvd::Real& v, const O& ref) {
    O d = abs(from(v) - ref) / abs(ref);
    return static_cast<double>(d);
}

inline double absdiff(const qvd::Real& v, const O& ref) { return static_cast<double>(abs(from(v) - ref)); }

}  // namespace oracle
