#pragma once

#include "qvd/core.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace qvd {

struct BesselEval {
    Real value;
    int terms_used = 0;
    Real max_term_magnitude;
    int precision_used = 0;
};

// j_nu(x, q^2) certified to `digits` significant digits by climbing the
// precision ladder (digits+20) * 2^i
BesselEval j_series_certified(const Real& x, const Real& q, const Real& nu, int digits);
int ladder_rung(int digits, int i);
constexpr int kLadderRungs = 8;

enum class SumPolicy { Relative, Absolute };

struct LatticeEval {
    Real value;
    Real max_term;
    long terms = 0;
    int precision_used = 0;
};

// term(k, P, cut): k-th summand at P digits; may return 0 when a cheap bound
// puts it below 10^cut
using LatticeTerm = std::function<Real(long k, int P, double cut)>;

// Two-sided sum over all integers, starting at k0 and walking up then down.
// Each side stops after 40 consecutive terms below 10^-P times the running
// max. Relative policy escalates until the sum is certified to `digits`.
LatticeEval lattice_sum(const LatticeTerm& term, long k0, int digits, SumPolicy policy);
// one-sided sum from `start` in direction `step` at fixed precision P
Real lattice_half_sum(const LatticeTerm& term, long start, long step, int P);

// Sample bank for one (q, nu): powers, weights, constants and j_nu(q^m)
// cached per precision. Thread safe; cached values never change.
class Lattice {
public:
    explicit Lattice(QParams p);

    const QParams& params() const { return p_; }
    int work() const { return p_.precision_digits; }
    const Constants& constants() const { return k_; }

    Real q(int P) const;
    Real qpow(long n, int P) const;
    // q^{n(2nu+2)}
    Real weight(long n, int P) const;
    // c_{q,nu}(1-q)
    Real cq(int P) const;
    // j_nu(q^m, q^2) to P significant digits
    Real j(long m, int P) const;
    // log10 of the bound on |j_nu(q^m)|
    double j_bound_log10(long m) const;
    double log10_q() const { return lq_; }
    double w() const { return w_; }

private:
    struct Bank {
        Real q, a, cq;
        std::unordered_map<long, Real> qpow, weight, j;
    };
    Bank& bank(int P) const;

    QParams p_;
    Constants k_;
    double lq_ = 0, w_ = 0, lb_ = 0;
    mutable std::recursive_mutex mu_;
    mutable std::map<int, std::unique_ptr<Bank>> banks_;
};

using LatticePtr = std::shared_ptr<const Lattice>;
LatticePtr make_lattice(const QParams& p);

// same q, digits and tol with nu shifted by an integer
QParams shift_nu(const QParams& p, int dnu);

}  // namespace qvd
