#include "qvd/core.hpp"

#include "linalg.hpp"

#include <cmath>

namespace qvd {

QParams QParams::make(std::string_view q, std::string_view nu, int digits, std::string_view tol) {
    if (digits < 30) fail(ErrorCode::Domain, "precision_digits must be >= 30");
    QParams p;
    p.precision_digits = digits;
    p.q = parse_decimal(q, digits);
    p.nu = parse_decimal(nu, digits);
    p.tol = parse_decimal(tol, digits);
    p.q_text = std::string(q);
    p.nu_text = std::string(nu);
    if (!(p.q > 0 && p.q < 1)) fail(ErrorCode::Domain, "q must lie in (0,1)");
    if (!(p.nu > -1)) fail(ErrorCode::Domain, "nu must be > -1");
    if (!(p.tol > 0)) fail(ErrorCode::Domain, "tol must be positive");
    return p;
}

QGrid::QGrid(int lo, int hi) : n_min(lo), n_max(hi) {
    if (lo > hi) fail(ErrorCode::Window, "empty grid window");
}

const char* decay_name(DecayClass c) {
    switch (c) {
    case DecayClass::Rapid: return "rapid";
    case DecayClass::Integrable: return "integrable";
    case DecayClass::Bounded: return "bounded";
    case DecayClass::Unknown: return "unknown";
    }
    return "unknown";
}

DecayClass decay_from_name(std::string_view s) {
    if (s == "rapid") return DecayClass::Rapid;
    if (s == "integrable") return DecayClass::Integrable;
    if (s == "bounded") return DecayClass::Bounded;
    if (s == "unknown") return DecayClass::Unknown;
    fail(ErrorCode::Parse, "unknown decay class '" + std::string(s) + "'");
}

GridFunction::GridFunction(QGrid g, DecayClass d, DecayClass s)
    : grid(g), values(static_cast<std::size_t>(g.size()), Real(0)), decay(d), spectral(s) {}

void GridFunction::check_finite() const {
    if (values.size() != static_cast<std::size_t>(grid.size()))
        fail(ErrorCode::InvalidArgument, "value count does not match the grid");
    for (const auto& v : values)
        if (!isfinite(v)) fail(ErrorCode::Overflow, "non-finite grid value");
}

Real GridFunction::sup() const {
    Real m = 0;
    for (const auto& v : values)
        if (abs(v) > m) m = abs(v);
    return m;
}

GridFunction sample(const QGrid& g, const std::function<Real(int)>& f, DecayClass d, DecayClass s) {
    GridFunction out(g, d, s);
    for (int n = g.n_min; n <= g.n_max; ++n) out.at(n) = f(n);
    return out;
}

Real qpow(const Real& q, long n) {
    return pow(q, Real(n, q.precision()));
}

Real qpochhammer_finite(const Real& a, const Real& q, int n) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "qpochhammer_finite needs n >= 0");
    Real prod(1, std::max(a.precision(), q.precision()));
    Real qi(1, prod.precision());
    for (int i = 0; i < n; ++i) {
        prod *= 1 - a * qi;
        qi *= q;
    }
    return prod;
}

Real qpochhammer_infinite(const Real& a, const Real& q, const Real& tol) {
    if (abs(q) >= 1) fail(ErrorCode::NonConvergent, "(a;q)_inf needs |q| < 1");
    unsigned P = std::max(a.precision(), q.precision());
    Real prod(1, P), qi(1, P);
    Real cut = tol / 100;
    bool have_prev = false;
    Real prev(0, P);
    for (long i = 0; i < 2000000; ++i) {
        Real t = a * qi;
        if (abs(t) < cut) {
            // remaining factors: prod_{j>=i}(1 - t q^{j-i}) ~ exp(-t/(1-q))
            Real cand = prod * exp(-t / (1 - q));
            if (have_prev && abs(cand - prev) <= tol * abs(cand)) return cand;
            prev = cand;
            have_prev = true;
        }
        prod *= 1 - t;
        qi *= q;
    }
    fail(ErrorCode::NonConvergent, "(a;q)_inf did not stabilize");
}

Real q_exponential(const Real& z, const Real& q, const Real& tol) {
    if (abs(z) >= 1) fail(ErrorCode::Domain, "e(z,q) series needs |z| < 1");
    unsigned P = std::max(z.precision(), q.precision());
    Real sum(1, P), term(1, P), qn(1, P), peak(1, P);
    int small = 0;
    for (long n = 0; n < 2000000; ++n) {
        qn *= q;
        term *= z / (1 - qn);
        sum += term;
        if (abs(sum) > peak) peak = abs(sum);
        small = abs(term) < tol * peak ? small + 1 : 0;
        if (small >= 40) return sum;
    }
    fail(ErrorCode::NonConvergent, "e(z,q) series did not converge");
}

Constants constants_at(const Real& qin, const Real& nuin, int digits) {
    PrecisionScope scope(digits + 10);
    Real q = promote(qin, digits + 10), nu = promote(nuin, digits + 10);
    Real tol = ten_pow(-(digits + 8), digits + 10);
    Real q2 = q * q;
    Real a = pow(q, 2 * nu + 2);
    Real pa = qpochhammer_infinite(a, q2, tol);
    Real p2 = qpochhammer_infinite(q2, q2, tol);
    Constants k;
    k.c_q_nu = with_digits(pa / p2 / (1 - q), digits);
    k.B_q_nu = with_digits(qpochhammer_infinite(-q2, q2, tol) * qpochhammer_infinite(-a, q2, tol) /
                               p2 / (1 - q),
                           digits);
    k.sigma_nu = with_digits(pa * p2, digits);
    return k;
}

Constants compute_constants(const QParams& p) { return constants_at(p.q, p.nu, p.precision_digits); }

Real bessel_bound(const QParams& p) {
    int d = p.precision_digits;
    PrecisionScope scope(d + 10);
    Real q = promote(p.q, d + 10), nu = promote(p.nu, d + 10);
    Real tol = ten_pow(-(d + 8), d + 10);
    Real q2 = q * q, a = pow(q, 2 * nu + 2);
    Real b = qpochhammer_infinite(-q2, q2, tol) * qpochhammer_infinite(-a, q2, tol) /
             qpochhammer_infinite(a, q2, tol);
    return with_digits(b, d);
}

TailModel TailModel::fit(const GridFunction& f, const Real& q) {
    TailModel m;
    m.n_max = f.grid.n_max;
    m.small_value = f.values.back();
    m.small_b = m.small_value;
    m.small_a = 0;
    m.small_rho = 0;
    if (f.grid.size() >= 3) {
        const Real& f0 = f.at(f.grid.n_max - 2);
        const Real& f1 = f.at(f.grid.n_max - 1);
        const Real& f2 = f.at(f.grid.n_max);
        Real d1 = f1 - f0, d2 = f2 - f1;
        Real scale = std::max(abs(f2), abs(f1));
        Real eps = ten_pow(-static_cast<int>(f2.precision()) + 5, static_cast<int>(f2.precision()));
        if (abs(d1) > eps * scale && abs(d2) > eps * scale) {
            Real rho = d2 / d1;
            if (abs(rho - 1) <= Real("1e-12")) {
                m.small_rho = 1;
                m.small_a = d2;
                m.small_b = f2;
                m.small_kind = Small::Linear;
            } else if (rho > 0) {
                m.small_rho = rho;
                m.small_a = d2 * rho / (rho - 1);
                m.small_b = f2 - m.small_a;
                m.small_kind = Small::Geometric;
            }
        }
    }
    for (auto& a : m.alpha) a = Real(0);
    if (f.decay != DecayClass::Integrable) return m;
    m.power_law = true;
    int k = std::min(3, f.grid.size());
    // f(q^n) = sum_p alpha_p u^p, u = q^{-2n}; solve in v = u/u0
    Real u0 = qpow(q, -2L * f.grid.n_min);
    std::vector<Real> A(k * k), b(k), x;
    for (int i = 0; i < k; ++i) {
        int n = f.grid.n_min + i;
        Real v = qpow(q, -2L * n) / u0;
        Real vp = v;
        for (int c = 0; c < k; ++c) {
            A[i * k + c] = vp;
            vp *= v;
        }
        b[i] = f.at(n);
    }
    if (!detail::solve_dense(A, b, k, x)) return m;
    Real up = u0;
    for (int c = 0; c < k; ++c) {
        m.alpha[c] = x[c] / up;
        up *= u0;
    }
    return m;
}

Real TailModel::small_at(long n, const Real& qw) const {
    if (!geometric_for(qw)) return small_value;
    if (small_kind == Small::Linear) return small_b + small_a * (n - n_max);
    return small_b + small_a * pow(small_rho, Real(n - n_max));
}

Real TailModel::large_value(int n, const Real& q) const {
    if (!power_law) return Real(0);
    Real u = qpow(q, -2L * n);
    Real s = 0, up = u;
    for (const auto& a : alpha) {
        s += a * up;
        up *= u;
    }
    return s;
}

namespace {

// (1-q) sum_{n<n_min} q^n sum_p alpha_p q^{-2pn}
Real jackson_large_tail(const TailModel& m, int n_min, const Real& q) {
    Real s = 0;
    if (!m.power_law) return s;
    for (int p = 1; p <= 3; ++p) {
        const Real& a = m.alpha[p - 1];
        if (a == 0) continue;
        Real r = qpow(q, 2 * p - 1);
        s += a * qpow(q, static_cast<long>(n_min) * (1 - 2 * p)) * r / (1 - r);
    }
    return (1 - q) * s;
}

// (1-q) sum_{n>n_max} q^n f(q^n) under the small-x model
Real jackson_small_tail(const TailModel& m, int n_max, const Real& q) {
    Real head = qpow(q, n_max + 1);
    if (!m.geometric_for(q)) return m.small_value * head;
    if (m.small_kind == TailModel::Small::Linear)
        return (1 - q) * head * (m.small_b / (1 - q) + m.small_a / ((1 - q) * (1 - q)));
    Real r = m.small_rho * q;
    return (1 - q) * head * (m.small_b / (1 - q) + m.small_a * m.small_rho / (1 - r));
}

}  // namespace

JacksonResult jackson_integral_finite(const GridFunction& f, int m, const QParams& p) {
    PrecisionScope scope(p.precision_digits);
    const QGrid& g = f.grid;
    int lo = std::max(m, g.n_min);
    if (g.n_max - lo + 1 < 8) fail(ErrorCode::Window, "window covers fewer than 8 summands");
    const Real& q = p.q;
    Real s = 0;
    for (int n = lo; n <= g.n_max; ++n) s += qpow(q, n) * f.at(n);
    s *= 1 - q;
    TailModel tm = TailModel::fit(f, q);
    JacksonResult r;
    r.tail_small = jackson_small_tail(tm, g.n_max, q);
    r.tail_large = 0;
    for (int n = m; n < g.n_min; ++n) r.tail_large += (1 - q) * qpow(q, n) * tm.large_value(n, q);
    r.value = s + r.tail_small + r.tail_large;
    return r;
}

JacksonResult jackson_integral_infinite(const GridFunction& f, const QParams& p) {
    if (f.decay != DecayClass::Rapid && f.decay != DecayClass::Integrable)
        fail(ErrorCode::Precondition, "jackson_integral_infinite needs rapid or integrable decay");
    PrecisionScope scope(p.precision_digits);
    const QGrid& g = f.grid;
    const Real& q = p.q;
    std::vector<Real> t(g.size());
    Real s = 0, peak = 0;
    for (int n = g.n_min; n <= g.n_max; ++n) {
        Real v = qpow(q, n) * f.at(n);
        t[g.index(n)] = abs(v);
        if (abs(v) > peak) peak = abs(v);
        s += v;
    }
    if (g.size() >= 3 && t[0] > t[1] && t[1] > t[2] && t[0] > p.tol * peak)
        fail(ErrorCode::DivergentTail, "head terms grow toward the largest grid point");
    TailModel tm = TailModel::fit(f, q);
    JacksonResult r;
    r.tail_small = jackson_small_tail(tm, g.n_max, q);
    if (tm.power_law) {
        r.tail_large = jackson_large_tail(tm, g.n_min, q);
    } else {
        // geometric bound from the outermost ratio
        r.tail_large = 0;
        if (g.size() >= 2 && t[1] != 0 && t[0] != 0) {
            Real ratio = t[0] / t[1];
            r.tail_large = ratio < 1 ? t[0] * ratio / (1 - ratio) : t[0];
        }
    }
    r.value = (1 - q) * s + r.tail_small + (tm.power_law ? r.tail_large : Real(0));
    return r;
}

GridFunction q_derivative(const GridFunction& f, const Real& q) {
    if (f.grid.size() < 2) fail(ErrorCode::Window, "q_derivative needs two grid points");
    GridFunction out(QGrid(f.grid.n_min, f.grid.n_max - 1));
    for (int n = out.grid.n_min; n <= out.grid.n_max; ++n)
        out.at(n) = (f.at(n) - f.at(n + 1)) / ((1 - q) * qpow(q, n));
    return out;
}

GridFunction lambda_shift(const GridFunction& f, int k) {
    int lo = std::max(f.grid.n_min, f.grid.n_min - k);
    int hi = std::min(f.grid.n_max, f.grid.n_max - k);
    if (lo > hi) fail(ErrorCode::Window, "shift empties the overlap");
    GridFunction out(QGrid(lo, hi), f.decay, f.spectral);
    for (int n = lo; n <= hi; ++n) out.at(n) = f.at(n + k);
    return out;
}

GridFunction q_bessel_operator(const GridFunction& f, const QParams& p) {
    if (f.grid.size() < 3) fail(ErrorCode::Window, "q_bessel_operator needs three grid points");
    PrecisionScope scope(p.precision_digits);
    const Real& q = p.q;
    Real q2nu = pow(q, 2 * p.nu);
    GridFunction out(QGrid(f.grid.n_min + 1, f.grid.n_max - 1));
    for (int n = out.grid.n_min; n <= out.grid.n_max; ++n)
        out.at(n) = qpow(q, -2L * n) * (f.at(n - 1) - (1 + q2nu) * f.at(n) + q2nu * f.at(n + 1));
    return out;
}

}  // namespace qvd
