#include "doctest.h"
#include "oracle.hpp"

#include "qvd/corpus.hpp"
#include "qvd/kernels.hpp"
#include "qvd/vdk.hpp"


using namespace qvd;

namespace {

GridFunction vals(std::initializer_list<const char*> v) {
    GridFunction f(QGrid(0, static_cast<int>(v.size()) - 1));
    int i = 0;
    for (const char* s : v) f.values[i++] = Real(s);
    return f;
}

struct Fixture {
    QParams p = QParams::make("0.5", "0.5");
    LatticePtr L = make_lattice(p);
    QGrid g{-24, 64};
    TransformPlan plan = build_plan(L, g, g);
    std::vector<NamedFunction> corpus = make_corpus(*L, g);
};

Fixture& fx() {
    static Fixture f;
    return f;
}

// real roots of the polynomial sum c_i u^i on (lo, inf) by a Sturm sequence
int sturm_positive_roots(std::vector<oracle::O> c) {
    using oracle::O;
    auto trim = [](std::vector<O>& p) {
        while (p.size() > 1 && abs(p.back()) < O("1e-200")) p.pop_back();
    };
    auto eval = [](const std::vector<O>& p, const O& x) {
        O s = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
        return s;
    };
    std::vector<std::vector<O>> seq{c};
    std::vector<O> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * O(static_cast<int>(i)));
    seq.push_back(d);
    while (seq.back().size() > 1) {
        std::vector<O> a = seq[seq.size() - 2], b = seq.back();
        while (a.size() >= b.size()) {
            O f = a.back() / b.back();
            std::size_t sh = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] -= f * b[i];
            a.pop_back();
        }
        for (auto& v : a) v = -v;
        trim(a);
        if (a.size() == 1 && abs(a[0]) < O("1e-200")) break;
        seq.push_back(a);
    }
    auto changes = [&](auto sign_at) {
        int n = 0, last = 0;
        for (const auto& p : seq) {
            int sg = sign_at(p);
            if (sg == 0) continue;
            if (last && sg != last) ++n;
            last = sg;
        }
        return n;
    };
    int at0 = changes([&](const std::vector<O>& p) { O v = eval(p, O(0)); return v > 0 ? 1 : v < 0 ? -1 : 0; });
    int atinf = changes([&](const std::vector<O>& p) { return p.back() > 0 ? 1 : -1; });
    return at0 - atinf;
}

}  // namespace

TEST_CASE("sign changes") {
    PrecisionScope s(60);
    Real zt("1e-30");
    CHECK(sign_changes(vals({"1", "1", "1"}), zt).changes == 0);
    CHECK(sign_changes(vals({"1", "-1", "1"}), zt).changes == 2);
    CHECK(sign_changes(vals({"1", "0", "-1"}), zt).changes == 1);
    CHECK(sign_changes(vals({"1", "1e-40", "-1"}), zt).kept_indices.size() == 2);
    try {
        sign_changes(vals({"0", "0"}), zt);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyPattern);
    }
    CHECK(count_sign_changes(vals({"0", "0"}), zt) == 0);
}

TEST_CASE("corpus declared variations") {
    Fixture& f = fx();
    REQUIRE(f.corpus.size() == 12);
    PrecisionScope s(60);
    for (const auto& nf : f.corpus) CHECK(count_sign_changes(nf.f, Real("1e-30")) == nf.declared_v);
}

TEST_CASE("variation diminishing with g_a and a composite") {
    Fixture& f = fx();
    PrecisionScope s(60);
    Real zt("1e-30");
    GridFunction K = f.corpus[6].f;  // g_1
    REQUIRE(f.corpus[6].name == "g_1");
    VdReport r = vd_check(K, f.corpus, f.plan, zt);
    CHECK(r.pass);
    for (const auto& e : r.entries) {
        CHECK(e.v_kf <= e.v_f);
        if (e.name == "step3") CHECK(e.v_f == 3);
        if (e.name == "plateau" || e.name == "plateau_neg") CHECK(e.v_kf == 0);
    }
    KernelReport G = composite_kernel(KernelSpec::make(0, {Real(1), Real(2)}), f.plan, {false});
    CHECK(vd_check(G.kernel, f.corpus, f.plan, zt).pass);
}

TEST_CASE("D_q variation") {
    QParams p = QParams::make("0.5", "0.5");
    PrecisionScope s(60);
    Real zt("1e-30");
    // hump x^2 e^{-x^2}
    GridFunction hump = sample(QGrid(-6, 40), [&](int n) { Real x = qpow(p.q, n); return x * x * exp(-x * x); });
    DqVariation h = dq_variation_check(hump, p.q, zt);
    CHECK(h.v_f == 0);
    CHECK(h.v_f <= h.v_dqf);
    GridFunction flip = sample(QGrid(-6, 40), [&](int n) { Real x = qpow(p.q, n); return (1 - x * x) * x * exp(-x * x); });
    DqVariation fl = dq_variation_check(flip, p.q, zt);
    CHECK(fl.v_f == 1);
    // oracle: sign changes of the explicit difference quotient
    int expect = 0, last = 0;
    for (int n = -6; n < 40; ++n) {
        Real d = (flip.at(n) - flip.at(n + 1)) / ((1 - p.q) * qpow(p.q, n));
        int sg = abs(d) <= zt ? 0 : d > 0 ? 1 : -1;
        if (sg && last && sg != last) ++expect;
        if (sg) last = sg;
    }
    CHECK(fl.v_dqf == expect);
    CHECK(fl.v_dqf >= 1);
    DqVariation z = dq_variation_check(sample(QGrid(0, 10), [](int) { return Real(0); }), p.q, zt);
    CHECK(z.v_f == 0);
    CHECK(z.v_dqf == 0);
}

TEST_CASE("omega series recovers the zero factors") {
    Fixture& f = fx();
    PrecisionScope s(60);
    KernelReport G = composite_kernel(KernelSpec::make(0, {Real(1), Real(2)}), f.plan, {false});
    EvenSeries w = omega_series(G.kernel, f.plan, 4);
    REQUIRE(w.coeffs.size() == 5);
    CHECK(static_cast<double>(abs(w.coeffs[0] - 1)) < 1e-10);
    CHECK(static_cast<double>(abs(w.coeffs[1] - Real("1.25"))) < 1e-10);
    CHECK(static_cast<double>(abs(w.coeffs[2] - Real("0.25"))) < 1e-10);
    CHECK(static_cast<double>(abs(w.coeffs[3])) < 1e-8);
    GridFunction g2 = f.corpus[6].f;
    EvenSeries wa = omega_series(g2, f.plan, 3);
    CHECK(static_cast<double>(abs(wa.coeffs[1] - 1)) < 1e-10);
    CHECK(static_cast<double>(abs(wa.coeffs[2])) < 1e-8);
    EvenSeries w0 = omega_series(G.kernel, f.plan, 0);
    REQUIRE(w0.coeffs.size() == 1);
    CHECK(w0.coeffs[0] == 1);
}

TEST_CASE("q_n and Q_n polynomials") {
    QParams p = QParams::make("0.5", "0.5");
    PrecisionScope s(60);
    EvenSeries w{{Real(1), Real("1.25"), Real("0.25")}, std::nullopt};
    EvenPolynomial q0 = qn_polynomial(w, 0, p);
    REQUIRE(q0.coeffs.size() == 1);
    CHECK(q0.coeffs[0] == 1);
    // n = 1: rho_1 (w_1 - q^2 w_0 z^2 / ((1-q^{2nu+2})(1-q^2)))
    Real q = p.q, a = pow(q, 2 * p.nu + 2);
    Real r1 = 1 / (q * q) - (1 + pow(q, 2 * p.nu)) + pow(q, 2 * p.nu) * q * q;
    EvenPolynomial q1 = qn_polynomial(w, 1, p);
    CHECK(abs(q1.coeffs[0] - r1 * Real("1.25")) < 1e-55);
    CHECK(abs(q1.coeffs[1] + r1 * q * q / ((1 - a) * (1 - q * q))) < 1e-55);
    EvenPolynomial Q0 = Qn_polynomial(w, 0, p);
    CHECK(abs(Q0.coeffs[0] - sigma_nu(p)) < 1e-55);
    CHECK(rho_n(0, p) == 1);
}

TEST_CASE("lq map") {
    PrecisionScope s(60);
    EvenSeries one{{Real(1), Real(1), Real(1)}, std::nullopt};
    EvenSeries m = lq_map(one, Real("0.5"));
    CHECK(m.coeffs[1] == Real("0.5"));
    CHECK(m.coeffs[2] == Real("0.0625"));
    CHECK(lq_map(one, Real(1)).coeffs == one.coeffs);
    EvenSeries other{{Real(1), Real(2), Real(1)}, std::nullopt};
    CHECK(lq_map(other, Real("0.5")).coeffs != m.coeffs);
}

TEST_CASE("real-rootedness") {
    PrecisionScope s(60);
    Real ti("1e-20");
    RootsReport a = real_roots_check(EvenPolynomial{{Real(1), Real(-1)}}, ti);
    CHECK(a.all_real);
    REQUIRE(a.roots.size() == 1);
    CHECK(abs(a.roots[0].u_re - 1) < 1e-50);
    RootsReport b = real_roots_check(EvenPolynomial{{Real(1), Real(1)}}, ti);
    CHECK_FALSE(b.all_real);
    CHECK(b.roots[0].u_real);
    CHECK_FALSE(b.roots[0].z_real);
    try {
        real_roots_check(EvenPolynomial{{Real(1), Real("1e-50")}}, ti);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateLeading);
    }
}

TEST_CASE("Q_2 of a two-zero kernel is real-rooted, with a Sturm count oracle") {
    QParams p = QParams::make("0.5", "0.5");
    PrecisionScope s(60);
    EvenSeries w{{Real(1), Real("1.25"), Real("0.25")}, std::nullopt};
    for (int n = 1; n <= 2; ++n) {
        EvenPolynomial Q = Qn_polynomial(w, n, p);
        RootsReport r = real_roots_check(Q, Real("1e-20"));
        CHECK(r.all_real);
        std::vector<oracle::O> c;
        for (const auto& v : Q.coeffs) c.push_back(oracle::from(v));
        CHECK(sturm_positive_roots(c) == n);
    }
    // 1 + z^2 + z^4 has no real z roots
    CHECK(sturm_positive_roots({oracle::O(1), oracle::O(1), oracle::O(1)}) == 0);
}
