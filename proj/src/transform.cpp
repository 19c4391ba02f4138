#include "qvd/transform.hpp"

#include <cmath>

namespace qvd {

namespace {

int plan_precision(const Lattice& L) { return ladder_rung(L.work(), 0); }

}  // namespace

TransformPlan build_plan(LatticePtr L, const QGrid& in, const QGrid& out) {
    TransformPlan plan;
    plan.params = L->params();
    plan.in_grid = in;
    plan.out_grid = out;
    plan.lattice = L;
    const int W = L->work();
    const int P = plan_precision(*L);
    const double lq = L->log10_q(), w = L->w();
    PrecisionScope scope(P);
    Real cq = L->cq(P);
    plan.matrix.reserve(static_cast<std::size_t>(in.size()) * out.size());
    for (int k = out.n_min; k <= out.n_max; ++k)
        for (int n = in.n_min; n <= in.n_max; ++n)
            plan.matrix.push_back(with_digits(cq * L->weight(n, P) * L->j(k + n, P), W));
    for (int k = out.n_min; k <= out.n_max; ++k) {
        auto small = [&](long n, int Pn, double cut) -> Real {
            if (L->j_bound_log10(k + n) + n * w * lq < cut) return Real(0);
            return L->weight(n, Pn) * L->j(k + n, Pn);
        };
        plan.tail_small.push_back(with_digits(cq * lattice_half_sum(small, in.n_max + 1, 1, P), W));
        std::array<Real, 3> large;
        for (int p = 1; p <= 3; ++p) {
            auto term = [&](long n, int Pn, double cut) -> Real {
                if (L->j_bound_log10(k + n) + n * (w - 2 * p) * lq < cut) return Real(0);
                return L->weight(n, Pn) * L->qpow(-2 * p * n, Pn) * L->j(k + n, Pn);
            };
            large[p - 1] = with_digits(cq * lattice_half_sum(term, in.n_min - 1, -1, P), W);
        }
        plan.tail_large.push_back(large);
    }
    return plan;
}

TransformPlan build_plan(const QParams& p, const QGrid& in, const QGrid& out) {
    return build_plan(make_lattice(p), in, out);
}

namespace {

GridFunction apply_plan(const GridFunction& f, const TransformPlan& plan, DecayClass cls) {
    if (!(f.grid == plan.in_grid)) fail(ErrorCode::Window, "grid function does not match the plan");
    const int W = plan.params.precision_digits;
    const Lattice& L = *plan.lattice;
    PrecisionScope scope(W);
    GridFunction g = f;
    g.decay = cls;
    TailModel tm = TailModel::fit(g, plan.params.q);
    const bool geo = tm.geometric_for(L.weight(1, W));
    const int N = plan.in_grid.n_max;
    GridFunction out(plan.out_grid);
    const std::size_t cols = static_cast<std::size_t>(plan.in_grid.size());
    Real worst = 0;
    for (int k = plan.out_grid.n_min; k <= plan.out_grid.n_max; ++k) {
        std::size_t r = plan.out_grid.index(k);
        const Real* row = &plan.matrix[r * cols];
        Real s = 0;
        for (std::size_t c = 0; c < cols; ++c) s += row[c] * f.values[c];
        Real tail;
        if (geo) {
            // c(1-q) sum_{n>N} q^{n(2nu+2)} rho^{n-N} j(q^{k+n})
            const int P = plan_precision(L);
            const bool lin = tm.small_kind == TailModel::Small::Linear;
            Real rho = promote(tm.small_rho, P);
            double lr = log10_abs(rho), lw = L.w() * L.log10_q();
            auto term = [&](long n, int Pn, double cut) -> Real {
                double grow = lin ? std::log10(static_cast<double>(n - N)) : (n - N) * lr;
                if (L.j_bound_log10(k + n) + n * lw + grow < cut) return Real(0);
                Real factor = lin ? Real(n - N) : pow(rho, Real(n - N));
                return L.weight(n, Pn) * factor * L.j(k + n, Pn);
            };
            Real srho = with_digits(L.cq(P) * lattice_half_sum(term, N + 1, 1, P), W);
            tail = plan.tail_small[r] * tm.small_b + srho * tm.small_a;
        } else {
            tail = plan.tail_small[r] * tm.small_value;
        }
        if (tm.power_law)
            for (int p = 0; p < 3; ++p) tail += plan.tail_large[r][p] * tm.alpha[p];
        if (abs(tail) > worst) worst = abs(tail);
        out.values[r] = s + tail;
    }
    out.tail_bound = worst;
    return out;
}

DecayClass tail_class(DecayClass c) {
    return c == DecayClass::Integrable ? DecayClass::Integrable : DecayClass::Rapid;
}

}  // namespace

GridFunction fourier(const GridFunction& f, const TransformPlan& plan) {
    if (f.decay != DecayClass::Rapid && f.decay != DecayClass::Integrable)
        fail(ErrorCode::Precondition, "fourier needs rapid or integrable decay");
    GridFunction out = apply_plan(f, plan, f.decay);
    out.decay = f.spectral;
    out.spectral = f.decay;
    return out;
}

DecayClass product_class(DecayClass a, DecayClass b) {
    if (a == DecayClass::Rapid || b == DecayClass::Rapid) return DecayClass::Rapid;
    if (a == DecayClass::Integrable || b == DecayClass::Integrable) return DecayClass::Integrable;
    return DecayClass::Unknown;
}

Real triple_kernel(int x, int y, int z, const Lattice& L) {
    const double wl = L.w() * L.log10_q();
    auto term = [&](long s, int P, double cut) -> Real {
        double b = L.j_bound_log10(x + s) + L.j_bound_log10(y + s) + L.j_bound_log10(z + s) + s * wl;
        if (b < cut) return Real(0);
        return L.weight(s, P) * L.j(x + s, P) * L.j(y + s, P) * L.j(z + s, P);
    };
    long k0 = -std::min({x, y, z});
    LatticeEval ev = lattice_sum(term, k0, L.work(), SumPolicy::Absolute);
    PrecisionScope scope(L.work());
    const Real& c = L.constants().c_q_nu;
    return ev.value * c * c * (1 - L.params().q);
}

namespace {

GridFunction translate_spectrum(const GridFunction& f, const GridFunction& Ff, int x, const TransformPlan& plan) {
    const Lattice& L = *plan.lattice;
    const int W = L.work();
    PrecisionScope scope(W);
    GridFunction h(Ff.grid, tail_class(f.spectral));
    for (int t = h.grid.n_min; t <= h.grid.n_max; ++t)
        h.at(t) = Ff.at(t) * with_digits(L.j(x + t, plan_precision(L)), W);
    GridFunction out = apply_plan(h, plan, tail_class(f.spectral));
    out.decay = DecayClass::Unknown;
    return out;
}

}  // namespace

GridFunction translate(const GridFunction& f, int x, const TransformPlan& plan) {
    return translate_spectrum(f, apply_plan(f, plan, tail_class(f.decay)), x, plan);
}

Real translate_kernel_route(const GridFunction& f, int x, int y, const Lattice& L) {
    const int W = L.work();
    PrecisionScope scope(W);
    Real s = 0;
    for (int z = f.grid.n_min; z <= f.grid.n_max; ++z) {
        if (f.at(z) == 0) continue;
        s += L.weight(z, W) * triple_kernel(x, y, z, L) * f.at(z);
    }
    return s * (1 - L.params().q);
}

GridFunction convolve(const GridFunction& f, const GridFunction& g, const TransformPlan& plan) {
    if (!(plan.in_grid == plan.out_grid)) fail(ErrorCode::Window, "convolve needs a square plan");
    GridFunction Ff = apply_plan(f, plan, tail_class(f.decay));
    GridFunction Fg = apply_plan(g, plan, tail_class(g.decay));
    PrecisionScope scope(plan.params.precision_digits);
    DecayClass pc = product_class(tail_class(f.spectral), tail_class(g.spectral));
    GridFunction prod(Ff.grid, pc);
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] = Ff.values[i] * Fg.values[i];
    GridFunction out = apply_plan(prod, plan, pc);
    bool both_rapid = f.decay == DecayClass::Rapid && g.decay == DecayClass::Rapid;
    out.decay = both_rapid ? DecayClass::Rapid : DecayClass::Integrable;
    out.spectral = pc;
    return out;
}

GridFunction convolve_definitional(const GridFunction& f, const GridFunction& g,
                                   const TransformPlan& plan) {
    const Lattice& L = *plan.lattice;
    const int W = L.work();
    PrecisionScope scope(W);
    Real cq = L.cq(W);
    const QGrid& G = g.grid;
    Real aw = L.weight(1, W);
    Real small_geo = L.weight(G.n_max + 1, W) / (1 - aw);
    GridFunction Ff = apply_plan(f, plan, tail_class(f.decay));
    GridFunction out(plan.out_grid, DecayClass::Unknown);
    for (int x = out.grid.n_min; x <= out.grid.n_max; ++x) {
        GridFunction T = translate_spectrum(f, Ff, x, plan);
        Real s = 0;
        for (int y = G.n_min; y <= G.n_max; ++y) s += L.weight(y, W) * T.at(y) * g.at(y);
        s += T.at(G.n_max) * g.at(G.n_max) * small_geo;
        out.at(x) = cq * s;
    }
    return out;
}

namespace {

Real abs_pow(const Real& v, double p) {
    if (p == 1) return abs(v);
    if (p == 2) return v * v;
    return pow(abs(v), Real(p));
}

// one-sided tail series with a divergence guard
Real tail_series(const std::function<Real(long)>& term, long start, long step, int W) {
    Real thr = ten_pow(-W - 10, W), peak = 0, last = 0, s = 0;
    int small = 0, rising = 0;
    for (long n = start; small < 40; n += step) {
        Real t = term(n);
        s += t;
        Real at = abs(t);
        rising = at > last ? rising + 1 : 0;
        last = at;
        if (at > peak) peak = at;
        small = at <= thr * peak ? small + 1 : 0;
        if (rising > 200 || std::labs(n - start) > 100000)
            fail(ErrorCode::DivergentTail, "tail model is not integrable against the weight");
    }
    return s;
}

}  // namespace

Real norm(const GridFunction& f, const LpNorm& spec, const QParams& params) {
    if (!(spec.p >= 1)) fail(ErrorCode::InvalidArgument, "norm needs p >= 1");
    const int W = params.precision_digits;
    PrecisionScope scope(W);
    if (std::isinf(spec.p)) return f.sup();
    const Real& q = params.q;
    Real wexp = spec.weighted ? 2 * params.nu + 2 : Real(1);
    Real aw = pow(q, wexp);
    Real s = 0;
    for (int n = f.grid.n_min; n <= f.grid.n_max; ++n) s += pow(aw, Real(n)) * abs_pow(f.at(n), spec.p);
    TailModel tm = TailModel::fit(f, q);
    if (tm.small_value != 0 || tm.small_kind != TailModel::Small::Constant) {
        // the small-x model is integrable only if |f|^p x^w stays summable
        Real lim = pow(aw, Real(1 / spec.p));
        s += tail_series([&](long n) { return pow(aw, Real(n)) * abs_pow(tm.small_at(n, lim), spec.p); },
                         f.grid.n_max + 1, 1, W);
    }
    if (tm.power_law)
        s += tail_series(
            [&](long n) { return pow(aw, Real(n)) * abs_pow(tm.large_value(static_cast<int>(n), q), spec.p); },
            f.grid.n_min - 1, -1, W);
    s *= 1 - q;
    if (spec.p == 1) return s;
    if (spec.p == 2) return sqrt(s);
    return pow(s, 1 / Real(spec.p));
}

Real weighted_mass(const GridFunction& f, const QParams& params) {
    const int W = params.precision_digits;
    PrecisionScope scope(W);
    const Real& q = params.q;
    Real aw = pow(q, 2 * params.nu + 2);
    Real s = 0;
    for (int n = f.grid.n_min; n <= f.grid.n_max; ++n) s += pow(aw, Real(n)) * f.at(n);
    TailModel tm = TailModel::fit(f, q);
    Real head = pow(aw, Real(f.grid.n_max + 1));
    if (tm.small_kind == TailModel::Small::Linear)
        s += tm.small_b * head / (1 - aw) + tm.small_a * head / ((1 - aw) * (1 - aw));
    else if (tm.geometric_for(aw))
        s += tm.small_b * head / (1 - aw) + tm.small_a * tm.small_rho * head / (1 - tm.small_rho * aw);
    else
        s += tm.small_value * head / (1 - aw);
    if (tm.power_law)
        s += tail_series([&](long n) { return pow(aw, Real(n)) * tm.large_value(static_cast<int>(n), q); },
                         f.grid.n_min - 1, -1, W);
    return s * (1 - q) * compute_constants(params).c_q_nu;
}

}  // namespace qvd
