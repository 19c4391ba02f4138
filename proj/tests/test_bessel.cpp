#include "doctest.h"
#include "oracle.hpp"

#include "qvd/bessel.hpp"
#include "qvd/transform.hpp"

using namespace qvd;
using oracle::O;

TEST_CASE("j_nu against direct summation") {
    QParams p0 = QParams::make("0.5", "0");
    PrecisionScope s(60);
    CHECK(j_nu(Real(0), p0).value == 1);
    O ref = oracle::bessel_series(O(1), O("0.5"), O(0), -1);
    CHECK(oracle::absdiff(j_nu(Real(1), p0).value, ref) < 1e-40);
    for (const char* nu : {"-0.5", "0.5", "1"}) {
        QParams p = QParams::make("0.5", nu);
        for (int n : {-20, -6, 0, 5}) {
            Real x = qpow(p.q, n);
            O r = oracle::bessel_series(oracle::from(x), O("0.5"), O(nu), -1);
            CHECK(oracle::absdiff(j_nu(x, p).value, r) < 1e-50);
        }
    }
}

TEST_CASE("j_nu growth bound") {
    QParams p = QParams::make("0.5", "0.5");
    PrecisionScope s(60);
    Real v = abs(j_nu(qpow(p.q, -6), p).value);
    Real bound = bessel_bound(p) * qpow(p.q, 48);
    CHECK(v <= bound);
    Lattice L(p);
    for (int m = -30; m <= 10; ++m) CHECK(log10_abs(L.j(m, 60)) <= L.j_bound_log10(m) + 1e-9);
}

TEST_CASE("I_nu") {
    QParams p = QParams::make("0.5", "0");
    PrecisionScope s(60);
    CHECK(i_nu(Real(0), p) == 1);
    O ref = oracle::bessel_series(O(1), O("0.5"), O(0), 1);
    CHECK(oracle::rel(i_nu(Real(1), p), ref) < 1e-40);
    for (int n = 10; n > -8; --n) CHECK(i_nu(qpow(p.q, n), p) < i_nu(qpow(p.q, n - 1), p));
}

TEST_CASE("eigen-equations of j_nu and I_nu") {
    for (const char* nu : {"-0.5", "0", "1"}) {
        QParams p = QParams::make("0.5", nu);
        PrecisionScope s(60);
        Real a("1.5"), a2 = a * a;
        QGrid g(-6, 40);
        GridFunction j = sample(g, [&](int n) { return j_nu(a * qpow(p.q, n), p).value; });
        GridFunction i = sample(g, [&](int n) { return i_nu(a * qpow(p.q, n), p); });
        GridFunction dj = q_bessel_operator(j, p), di = q_bessel_operator(i, p);
        for (int n = dj.grid.n_min; n <= dj.grid.n_max; ++n) {
            Real scale = qpow(p.q, -2 * n) * 4;
            CHECK(static_cast<double>(abs(dj.at(n) + a2 * j.at(n)) / scale) < 1e-50);
            CHECK(static_cast<double>(abs(di.at(n) - a2 * i.at(n)) / (scale * i.at(n))) < 1e-50);
        }
    }
}

TEST_CASE("K_nu against a direct lattice sum") {
    QParams p = QParams::make("0.5", "0.5");
    auto L = make_lattice(p);
    PrecisionScope s(60);
    O q("0.5"), nu("0.5");
    auto phi = [](const O& t) { return 1 / (1 + t * t); };
    for (int n : {-6, 0, 8}) {
        O ref = oracle::lattice_transform(n, q, nu, phi, -n - 15, 260);
        CHECK(oracle::rel(k_nu(n, *L), ref) < 1e-45);
    }
}

TEST_CASE("K_nu positive on the window") {
    for (const char* nu : {"-0.5", "0", "0.5", "1"}) {
        auto L = make_lattice(QParams::make("0.5", nu));
        for (int n = -24; n <= 64; n += 4) CHECK(k_nu(n, *L) > 0);
    }
}

TEST_CASE("F(K_nu)(1) = 1/2") {
    QParams p = QParams::make("0.5", "0.5");
    auto L = make_lattice(p);
    QGrid g(-24, 64);
    TransformPlan plan = build_plan(L, g, g);
    PrecisionScope s(60);
    GridFunction K = sample(g, [&](int n) { return k_nu(n, *L); }, DecayClass::Rapid, DecayClass::Integrable);
    GridFunction F = fourier(K, plan);
    CHECK(static_cast<double>(abs(F.at(0) - Real("0.5"))) < 1e-25);
}

TEST_CASE("g_a on the lattice is a scaled K_nu") {
    QParams p = QParams::make("0.5", "1");
    auto L = make_lattice(p);
    PrecisionScope s(60);
    for (int m : {-2, 2}) {
        Real a = qpow(p.q, m);
        for (int n : {-10, 0, 12}) {
            Real want = pow(a, 2 * p.nu + 2) * k_nu(n + m, *L);
            CHECK(static_cast<double>(abs(g_a(n, a, *L) - want) / want) < 1e-45);
        }
    }
}

TEST_CASE("g_a satisfies its q-difference equation and has unit mass") {
    QParams p = QParams::make("0.5", "0");
    auto L = make_lattice(p);
    PrecisionScope s(60);
    Real a("1.3"), a2 = a * a;
    QGrid g(-24, 64);
    GridFunction ga = sample(g, [&](int n) { return g_a(n, a, *L); }, DecayClass::Rapid, DecayClass::Integrable);
    GridFunction d = q_bessel_operator(ga, p);
    for (int n = -16; n <= 56; n += 3) {
        Real scale = abs(ga.at(n)) + qpow(p.q, -2 * n) * (abs(ga.at(n - 1)) + 2 * abs(ga.at(n)) + abs(ga.at(n + 1))) / a2;
        CHECK(static_cast<double>(abs(ga.at(n) - d.at(n) / a2) / scale) < 1e-50);
    }
    CHECK(static_cast<double>(abs(weighted_mass(ga, p) - 1)) < 1e-25);
}

TEST_CASE("Wronskian constant and closed form") {
    for (const char* nu : {"-0.5", "0", "1"}) {
        QParams p = QParams::make("0.5", nu);
        auto L = make_lattice(p);
        WronskianReport w = wronskian(*L, QGrid(-24, 64));
        CHECK(w.spread < 10 * p.tol);
        CHECK(w.mean > 0);
        O q("0.5"), q2 = q * q;
        O ref = oracle::poch_inf(q2, q2) / oracle::poch_inf(pow(q, 2 * O(nu) + 2), q2);
        CHECK(oracle::rel(w.mean, ref) < 1e-40);
        CHECK(d_nu(*L, QGrid(-24, 64)) == w.mean);
    }
}

TEST_CASE("small-x limit of x^{2nu}K_nu is d_{nu-1}") {
    // at nu = 1 the limit is d_0 = 1, not d_1 = 0.75
    QParams p1 = QParams::make("0.5", "1");
    auto L1 = make_lattice(p1);
    Real d0 = d_nu(*make_lattice(QParams::make("0.5", "0")), QGrid(-24, 64));
    PrecisionScope s(60);
    double prev = 1;
    for (int n : {10, 12, 14, 16, 18, 20}) {
        Real v = qpow(p1.q, 2 * n) * k_nu(n, *L1);
        double e = static_cast<double>(abs(v - d0));
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 1e-3);
}
