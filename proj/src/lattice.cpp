#include "qvd/lattice.hpp"

#include <cmath>
#include <limits>

namespace qvd {

int ladder_rung(int digits, int i) { return (digits + 20) << i; }

BesselEval j_series_certified(const Real& x, const Real& q, const Real& nu, int digits) {
    BesselEval ev;
    if (x == 0) {
        PrecisionScope scope(digits);
        ev.value = 1;
        ev.terms_used = 1;
        ev.max_term_magnitude = 1;
        ev.precision_used = digits;
        return ev;
    }
    for (int i = 0; i < kLadderRungs; ++i) {
        int P = ladder_rung(digits, i);
        PrecisionScope scope(P);
        Real X = promote(x, P), Q = promote(q, P), NU = promote(nu, P);
        Real q2 = Q * Q, a = pow(Q, 2 * NU + 2), x2 = X * X;
        Real thr = ten_pow(-P, P);
        Real term(1), sum(1), peak(1), q2n(1);  // q2n = q^{2n}
        int small = 0, n = 0;
        while (small < 40) {
            // t_{n+1} = -t_n q^{2n+2} x^2 / ((1 - a q^{2n})(1 - q^{2n+2}))
            Real num = q2n * q2;
            term *= -num * x2 / ((1 - a * q2n) * (1 - num));
            q2n = num;
            sum += term;
            ++n;
            Real at = abs(term);
            if (at > peak) peak = at;
            small = at <= thr * peak ? small + 1 : 0;
            if (n > 1000000) fail(ErrorCode::NonConvergent, "j_nu series did not terminate");
        }
        if (sum == 0) continue;
        double loss = log10_abs(peak) - log10_abs(sum);
        if (loss + digits + 5 <= P) {
            ev.value = with_digits(sum, digits);
            ev.terms_used = n + 1;
            ev.max_term_magnitude = with_digits(peak, digits);
            ev.precision_used = P;
            return ev;
        }
    }
    fail(ErrorCode::PrecisionExhausted, "j_nu cancellation exceeds the precision ladder");
}

LatticeEval lattice_sum(const LatticeTerm& term, long k0, int digits, SumPolicy policy) {
    int rungs = policy == SumPolicy::Relative ? kLadderRungs : 1;
    for (int i = 0; i < rungs; ++i) {
        int P = ladder_rung(digits, i);
        PrecisionScope scope(P);
        Real thr = ten_pow(-P, P);
        Real sum(0), peak(0);
        long terms = 0;
        auto walk = [&](long start, long step) {
            int small = 0, zeros = 0;
            for (long k = start; small < 40; k += step) {
                double cut = peak == 0 ? -std::numeric_limits<double>::infinity()
                                       : log10_abs(peak) - P - 1;
                Real t = term(k, P, cut);
                sum += t;
                ++terms;
                Real at = abs(t);
                if (at > peak) peak = at;
                // leading zeros before the first nonzero term do not count
                if (peak > 0 || ++zeros > 4000) small = at <= thr * peak ? small + 1 : 0;
                if (terms > 400000) fail(ErrorCode::NonConvergent, "lattice sum did not terminate");
            }
        };
        walk(k0, 1);
        walk(k0 - 1, -1);
        LatticeEval ev;
        ev.terms = terms;
        ev.precision_used = P;
        if (policy == SumPolicy::Relative) {
            if (sum == 0) continue;
            double loss = log10_abs(peak) - log10_abs(sum);
            if (loss + digits + 5 > P) continue;
        }
        ev.value = with_digits(sum, digits);
        ev.max_term = with_digits(peak, digits);
        return ev;
    }
    fail(ErrorCode::PrecisionExhausted, "lattice sum cancellation exceeds the precision ladder");
}

Real lattice_half_sum(const LatticeTerm& term, long start, long step, int P) {
    PrecisionScope scope(P);
    Real thr = ten_pow(-P, P);
    Real sum(0), peak(0);
    int small = 0, zeros = 0;
    long terms = 0;
    for (long k = start; small < 40; k += step) {
        double cut = peak == 0 ? -std::numeric_limits<double>::infinity() : log10_abs(peak) - P - 1;
        Real t = term(k, P, cut);
        sum += t;
        Real at = abs(t);
        if (at > peak) peak = at;
        if (peak > 0 || ++zeros > 4000) small = at <= thr * peak ? small + 1 : 0;
        if (++terms > 400000) fail(ErrorCode::NonConvergent, "lattice sum did not terminate");
    }
    return sum;
}

Lattice::Lattice(QParams p) : p_(std::move(p)) {
    k_ = compute_constants(p_);
    lq_ = std::log10(static_cast<double>(p_.q));
    w_ = 2 * static_cast<double>(p_.nu) + 2;
    lb_ = log10_abs(bessel_bound(p_));
}

Lattice::Bank& Lattice::bank(int P) const {
    std::lock_guard lock(mu_);
    auto it = banks_.find(P);
    if (it != banks_.end()) return *it->second;
    PrecisionScope scope(P);
    auto b = std::make_unique<Bank>();
    b->q = promote(p_.q, P);
    Real nu = promote(p_.nu, P);
    b->a = pow(b->q, 2 * nu + 2);
    b->cq = constants_at(b->q, nu, P).c_q_nu * (1 - b->q);
    auto& ref = *b;
    banks_.emplace(P, std::move(b));
    return ref;
}

Real Lattice::q(int P) const { return bank(P).q; }

Real Lattice::cq(int P) const { return bank(P).cq; }

Real Lattice::qpow(long n, int P) const {
    std::lock_guard lock(mu_);
    Bank& b = bank(P);
    auto it = b.qpow.find(n);
    if (it != b.qpow.end()) return it->second;
    PrecisionScope scope(P);
    Real v = pow(b.q, Real(n));
    b.qpow.emplace(n, v);
    return v;
}

Real Lattice::weight(long n, int P) const {
    std::lock_guard lock(mu_);
    Bank& b = bank(P);
    auto it = b.weight.find(n);
    if (it != b.weight.end()) return it->second;
    PrecisionScope scope(P);
    Real v = pow(b.a, Real(n));
    b.weight.emplace(n, v);
    return v;
}

Real Lattice::j(long m, int P) const {
    std::lock_guard lock(mu_);
    Bank& b = bank(P);
    auto it = b.j.find(m);
    if (it != b.j.end()) return it->second;
    Real x = qpow(m, P);
    Real v = j_series_certified(x, b.q, promote(p_.nu, P), P).value;
    b.j.emplace(m, v);
    return v;
}

double Lattice::j_bound_log10(long m) const {
    if (m >= 0) return lb_;
    double md = static_cast<double>(m);
    return lb_ + (md * md - (w_ - 1) * md) * lq_;
}

LatticePtr make_lattice(const QParams& p) { return std::make_shared<const Lattice>(p); }

QParams shift_nu(const QParams& p, int dnu) {
    QParams s = p;
    {
        PrecisionScope scope(p.precision_digits);
        s.nu = p.nu + dnu;
    }
    s.nu_text = to_decimal(s.nu, p.precision_digits);
    return s;
}

}  // namespace qvd
