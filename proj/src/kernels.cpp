#include "qvd/kernels.hpp"

#include "qvd/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qvd {

KernelSpec KernelSpec::make(const Real& c, std::vector<Real> zeros) {
    KernelSpec s;
    s.c = c;
    s.zeros = std::move(zeros);
    s.validate();
    s.tail_sum = 0;
    for (const auto& a : s.zeros) s.tail_sum += 1 / (a * a);
    return s;
}

void KernelSpec::validate() const {
    if (c < 0) fail(ErrorCode::Domain, "kernel weight c must be >= 0");
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (!(zeros[i] > 0)) fail(ErrorCode::Domain, "kernel zeros must be positive");
        if (i > 0 && zeros[i] < zeros[i - 1]) fail(ErrorCode::Domain, "kernel zeros must be nondecreasing");
    }
}

KernelSpec KernelSpec::prefix(std::size_t m) const {
    return make(c, std::vector<Real>(zeros.begin(), zeros.begin() + std::min(m, zeros.size())));
}

Real E_eval(const Real& t, const KernelSpec& spec) {
    Real t2 = t * t;
    Real e = exp(spec.c * t2);
    for (const auto& a : spec.zeros) e *= 1 + t2 / (a * a);
    if (!isfinite(e)) fail(ErrorCode::Overflow, "E(t) exceeds the exponent range");
    return e;
}

namespace {

void check_integrable(const KernelSpec& spec, const QParams& p) {
    if (spec.c == 0 && spec.zeros.size() < 2 && (p.nu >= 0 || spec.zeros.empty()))
        fail(ErrorCode::Integrability,
             "t^{2nu+1}/E(t) is not integrable at infinity; supply more zeros or c > 0");
}

}  // namespace

GridFunction composite_samples(const KernelSpec& spec, const TransformPlan& plan) {
    spec.validate();
    const Lattice& L = *plan.lattice;
    check_integrable(spec, L.params());
    const double wl = L.w() * L.log10_q();
    const int W = L.work();
    DecayClass sc = spec.c > 0 ? DecayClass::Rapid : DecayClass::Integrable;
    GridFunction G(plan.out_grid, DecayClass::Rapid, sc);
    const double cd = static_cast<double>(spec.c);
    for (int n = G.grid.n_min; n <= G.grid.n_max; ++n) {
        auto term = [&](long k, int P, double cut) -> Real {
            double lb = L.j_bound_log10(n + k) + k * wl;
            if (spec.c > 0) lb -= cd * std::pow(10.0, 2 * k * L.log10_q()) * 0.4342944819032518;
            if (lb < cut || lb < -1e7) return Real(0);
            PrecisionScope scope(P);
            KernelSpec sp;
            sp.c = promote(spec.c, P);
            for (const auto& a : spec.zeros) sp.zeros.push_back(promote(a, P));
            return L.weight(k, P) * L.j(n + k, P) / E_eval(L.qpow(k, P), sp);
        };
        LatticeEval ev = lattice_sum(term, -n, W, SumPolicy::Relative);
        PrecisionScope scope(W);
        G.at(n) = ev.value * L.cq(W);
    }
    return G;
}

KernelReport composite_kernel(const KernelSpec& spec, const TransformPlan& plan,
                              const KernelOptions& opt) {
    KernelReport r;
    r.kernel = composite_samples(spec, plan);
    const QParams& p = plan.params;
    PrecisionScope scope(p.precision_digits);
    r.mass = weighted_mass(r.kernel, p);
    r.min_value = *std::min_element(r.kernel.values.begin(), r.kernel.values.end());
    std::size_t n = spec.zeros.size();
    if (opt.chain && n >= 2 && n <= opt.max_chain_zeros) {
        std::vector<std::optional<GridFunction>> level(n + 1);
        level[n] = r.kernel;
        for (std::size_t m = 1; m < n; ++m) {
            try {
                level[m] = composite_samples(spec.prefix(m), plan);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Integrability) throw;
            }
        }
        for (std::size_t m = n - 1; m >= 1; --m) {
            ChainGap gap;
            gap.m = m;
            gap.defined = level[m].has_value() && level[m + 1].has_value();
            if (gap.defined) {
                const GridFunction& hi = *level[m + 1];
                const GridFunction& lo = *level[m];
                gap.min_gap = hi.values[0] - lo.values[0];
                gap.argmin = hi.grid.n_min;
                for (int k = hi.grid.n_min; k <= hi.grid.n_max; ++k) {
                    Real d = hi.at(k) - lo.at(k);
                    if (d < gap.min_gap) {
                        gap.min_gap = d;
                        gap.argmin = k;
                    }
                }
                if (gap.min_gap < -Real(opt.gap_tol)) r.monotone_chain_ok = false;
            }
            r.chain.push_back(gap);
        }
    }
    return r;
}

Real gauss_kernel_at(const Real& x, const Real& c, const QParams& p) {
    if (!(c > 0)) fail(ErrorCode::Domain, "gauss_kernel needs c > 0");
    const int W = p.precision_digits, P = W + 10;
    PrecisionScope scope(P);
    Real q = promote(p.q, P), nu = promote(p.nu, P), C = promote(c, P), X = promote(x, P);
    Real tol = ten_pow(-P, P);
    Real q2 = q * q, qm = pow(q, -2 * nu);
    Real pre = qpochhammer_infinite(-pow(q, 2 * nu + 2) * C, q2, tol) *
               qpochhammer_infinite(-qm / C, q2, tol) /
               (qpochhammer_infinite(-C, q2, tol) * qpochhammer_infinite(-q2 / C, q2, tol));
    Real z = -qm * X * X / C;
    Real e;
    if (abs(z) < Real("0.5")) {
        e = q_exponential(z, q2, tol);
    } else {
        Real d = qpochhammer_infinite(z, q2, tol);
        if (d == 0) fail(ErrorCode::Domain, "e(z,q^2) has a pole at this argument");
        e = 1 / d;
    }
    return with_digits(pre * e, W);
}

Real gauss_kernel(int n, const Real& c, const QParams& p) {
    PrecisionScope scope(p.precision_digits + 10);
    return gauss_kernel_at(qpow(promote(p.q, p.precision_digits + 10), n), c, p);
}

GridFunction gauss_samples(const QGrid& g, const Real& c, const QParams& p) {
    PrecisionScope scope(p.precision_digits);
    Real c2 = c * c;
    return sample(g, [&](int n) { return gauss_kernel(n, c2, p); }, DecayClass::Rapid, DecayClass::Rapid);
}

std::vector<Real> approx_identity_run(const GridFunction& f, const TransformPlan& plan,
                                      const std::vector<int>& n_list) {
    const QParams& p = plan.params;
    std::vector<Real> out;
    for (int n : n_list) {
        PrecisionScope scope(p.precision_digits);
        GridFunction k = gauss_samples(plan.out_grid, qpow(p.q, n), p);
        GridFunction c = convolve(f, k, plan);
        GridFunction d(f.grid);
        for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = f.values[i] - c.values[i];
        d.decay = (f.decay == DecayClass::Rapid && c.decay == DecayClass::Rapid) ? DecayClass::Rapid
                                                                                   : DecayClass::Integrable;
        out.push_back(norm(d, {1, true}, p));
    }
    return out;
}

OrderDiagnostic order_diagnostic(const GridFunction& G, const Lattice& L, const std::vector<int>& scan) {
    const int W = L.work();
    PrecisionScope scope(W);
    const int len = std::min(16, G.grid.size());
    std::vector<int> tail;  // increasing x
    for (int i = len - 1; i >= 0; --i) tail.push_back(G.grid.n_min + i);
    for (int n : tail)
        if (!(G.at(n) > 0)) fail(ErrorCode::Precondition, "order_diagnostic needs G > 0 on the tail");
    Real slack = ten_pow(-W / 2, W);
    std::map<int, Real> kcache;
    auto K = [&](int n) {
        auto it = kcache.find(n);
        if (it != kcache.end()) return it->second;
        Real v = k_nu(n, L);
        kcache.emplace(n, v);
        return v;
    };
    std::optional<OrderDiagnostic> best;
    for (int m : scan) {
        std::vector<Real> ratio;
        for (int n : tail) ratio.push_back(G.at(n) / (L.weight(m, W) * K(m + n)));
        bool ok = true;
        for (std::size_t i = 1; i < ratio.size(); ++i)
            if (ratio[i] > ratio[i - 1] * (1 + slack)) ok = false;
        if (!ok) continue;
        if (!best || m < best->m_est) {
            OrderDiagnostic d;
            d.m_est = m;
            d.a_est = L.qpow(m, W);
            d.ratio_profile = ratio;
            best = d;
        }
    }
    if (!best) fail(ErrorCode::NoWitness, "no scanned a gives a non-increasing tail ratio");
    return *best;
}

}  // namespace qvd
