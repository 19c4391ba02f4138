#include "qvd/vdk.hpp"

#include "linalg.hpp"

#include <cmath>

namespace qvd {

SignPattern sign_changes(const GridFunction& f, const Real& zero_tol) {
    if (zero_tol < 0) fail(ErrorCode::InvalidArgument, "zero_tol must be >= 0");
    Real scale = f.sup();
    Real cut = zero_tol * scale;
    SignPattern s;
    for (int n = f.grid.n_max; n >= f.grid.n_min; --n) {
        const Real& v = f.at(n);
        if (abs(v) <= cut) continue;
        int sg = v > 0 ? 1 : -1;
        if (!s.signs.empty() && s.signs.back() != sg) ++s.changes;
        s.kept_indices.push_back(n);
        s.signs.push_back(sg);
    }
    if (s.signs.empty()) fail(ErrorCode::EmptyPattern, "every value is below zero_tol");
    return s;
}

int count_sign_changes(const GridFunction& f, const Real& zero_tol) {
    try {
        return sign_changes(f, zero_tol).changes;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyPattern) throw;
        return 0;
    }
}

namespace {

SignPattern pattern_or_empty(const GridFunction& f, const Real& zero_tol) {
    try {
        return sign_changes(f, zero_tol);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyPattern) throw;
        return {};
    }
}

}  // namespace

VdReport vd_check(const GridFunction& K, const std::vector<NamedFunction>& corpus,
                  const TransformPlan& plan, const Real& zero_tol) {
    if (K.decay != DecayClass::Rapid && K.decay != DecayClass::Integrable)
        fail(ErrorCode::Precondition, "vd_check needs an integrable kernel");
    VdReport r;
    for (const auto& item : corpus) {
        VdEntry e;
        e.name = item.name;
        GridFunction kf = convolve(K, item.f, plan);
        e.pattern_f = pattern_or_empty(item.f, zero_tol);
        e.pattern_kf = pattern_or_empty(kf, zero_tol);
        e.v_f = e.pattern_f.changes;
        e.v_kf = e.pattern_kf.changes;
        e.pass = e.v_kf <= e.v_f;
        if (!e.pass) {
            ++r.violations;
            r.pass = false;
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

DqVariation dq_variation_check(const GridFunction& f, const Real& q, const Real& zero_tol) {
    DqVariation r;
    Real scale = f.sup();
    if (scale == 0) return r;
    Real cut = zero_tol * scale;
    if (abs(f.values.front()) > cut && abs(f.values.back()) > cut)
        fail(ErrorCode::Precondition, "dq_variation_check needs f to vanish at one window end");
    r.v_f = count_sign_changes(f, zero_tol);
    r.v_dqf = count_sign_changes(q_derivative(f, q), zero_tol);
    r.pass = r.v_dqf >= r.v_f;
    return r;
}

OmegaFit omega_fit(const GridFunction& G, const TransformPlan& plan, int m) {
    if (m < 0) fail(ErrorCode::InvalidArgument, "omega_series needs m >= 0");
    const QParams& p = plan.params;
    const int W = p.precision_digits;
    PrecisionScope scope(W);
    OmegaFit fit;
    if (m == 0) {
        fit.omega.coeffs = {Real(1)};
        fit.transform_series.coeffs = {Real(1)};
        fit.raw_beta0 = 1;
        return fit;
    }
    GridFunction FG = fourier(G, plan);
    const int M = 2 * (m + 1);
    const Real& q = p.q;
    // Vandermonde in v = u/u_max with u = t^2 = q^{2n}
    std::vector<Real> V(M * M);
    Real r2 = q * q;
    for (int i = 0; i < M; ++i) {
        Real vi = pow(r2, i), vp = 1;
        for (int c = 0; c < M; ++c) {
            V[i * M + c] = vp;
            vp *= vi;
        }
    }
    double lk = std::log10(detail::condition_inf(V, M));
    double lq = std::log10(static_cast<double>(q));
    const QGrid& g = FG.grid;
    int start = 0;
    bool found = false;
    double loss = 0;
    for (int n0 = g.n_max - M + 1; n0 >= g.n_min; --n0) {
        // u_max = q^{2 n0}; beta_m is amplified by u_max^{-m}
        loss = lk + m * (-2.0 * n0 * lq);
        if (loss <= W / 2.0) {
            start = n0;
            found = true;
            break;
        }
    }
    if (!found) fail(ErrorCode::IllConditioned, "Maclaurin fit would lose more than half the digits");
    for (int n = start; n < start + M; ++n)
        if (!(FG.at(n) > 0)) fail(ErrorCode::Precondition, "F(G) must be positive at the fit arguments");
    std::vector<Real> b(M), gamma;
    for (int i = 0; i < M; ++i) b[i] = FG.at(start + i);
    if (!detail::solve_dense(V, b, M, gamma)) fail(ErrorCode::IllConditioned, "singular Maclaurin system");
    Real umax = qpow(q, 2L * start);
    std::vector<Real> beta(m + 1);
    Real up = 1;
    for (int k = 0; k <= m; ++k) {
        beta[k] = gamma[k] / up;
        up *= umax;
    }
    fit.raw_beta0 = beta[0];
    for (auto& v : beta) v /= fit.raw_beta0;
    std::vector<Real> w(m + 1);
    w[0] = 1;
    for (int k = 1; k <= m; ++k) {
        Real s = 0;
        for (int i = 1; i <= k; ++i) s += beta[i] * w[k - i];
        w[k] = -s;
    }
    fit.omega.coeffs = w;
    fit.transform_series.coeffs = beta;
    fit.block_start = start;
    fit.digit_loss = loss;
    return fit;
}

EvenSeries omega_series(const GridFunction& G, const TransformPlan& plan, int m) {
    return omega_fit(G, plan, m).omega;
}

Real rho_n(int n, const QParams& p) {
    PrecisionScope scope(p.precision_digits);
    const Real& q = p.q;
    Real q2nu = pow(q, 2 * p.nu);
    Real r = 1;
    for (int i = 1; i <= n; ++i) r *= qpow(q, -2L * i) - (1 + q2nu) + q2nu * qpow(q, 2L * i);
    return r;
}

Real sigma_nu(const QParams& p) { return compute_constants(p).sigma_nu; }

namespace {

void need_terms(const EvenSeries& w, int n) {
    if (n < 0 || static_cast<int>(w.coeffs.size()) < n + 1)
        fail(ErrorCode::InvalidArgument, "series needs at least n+1 coefficients");
}

}  // namespace

EvenPolynomial qn_polynomial(const EvenSeries& w, int n, const QParams& p) {
    need_terms(w, n);
    PrecisionScope scope(p.precision_digits);
    const Real& q = p.q;
    Real q2 = q * q, a = pow(q, 2 * p.nu + 2);
    Real rho = rho_n(n, p);
    EvenPolynomial out;
    for (int i = 0; i <= n; ++i) {
        Real c = rho * qpow(q, static_cast<long>(i) * (i + 1)) * w.coeffs[n - i] /
                 (qpochhammer_finite(a, q2, i) * qpochhammer_finite(q2, q2, i));
        out.coeffs.push_back(i % 2 ? -c : c);
    }
    return out;
}

EvenPolynomial Qn_polynomial(const EvenSeries& w, int n, const QParams& p) {
    need_terms(w, n);
    PrecisionScope scope(p.precision_digits);
    const Real& q = p.q;
    Real q2 = q * q, a = pow(q, 2 * p.nu + 2);
    Real sigma = sigma_nu(p);
    EvenPolynomial out;
    for (int j = 0; j <= n; ++j) {
        Real c = sigma * qpow(q, static_cast<long>(j) * j) * w.coeffs[j] /
                 (qpochhammer_finite(a, q2, n - j) * qpochhammer_finite(q2, q2, n - j));
        out.coeffs.push_back(j % 2 ? -c : c);
    }
    return out;
}

EvenSeries lq_map(const EvenSeries& phi, const Real& q) {
    EvenSeries out;
    out.radius_hint = std::nullopt;
    for (std::size_t n = 0; n < phi.coeffs.size(); ++n)
        out.coeffs.push_back(phi.coeffs[n] * qpow(q, static_cast<long>(n * n)));
    return out;
}

Real eval_even(const EvenPolynomial& p, const Real& z) {
    Real z2 = z * z, s = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) s = s * z2 + *it;
    return s;
}

}  // namespace qvd
