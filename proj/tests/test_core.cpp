#include "doctest.h"
#include "oracle.hpp"

#include "qvd/core.hpp"

using namespace qvd;
using oracle::O;

namespace {

QParams P(const char* q = "0.5", const char* nu = "0.5") { return QParams::make(q, nu); }

}  // namespace

TEST_CASE("params gate the domain") {
    QParams p = QParams::make("0.5", "0");
    CHECK(p.q == parse_decimal("0.5", 60));
    CHECK(p.nu == 0);
    CHECK(p.precision_digits == 60);
    CHECK(p.tol == parse_decimal("1e-40", 60));
    CHECK_THROWS_AS(QParams::make("1.0", "0"), Error);
    CHECK_THROWS_AS(QParams::make("0.5", "-1"), Error);
    CHECK_THROWS_AS(QParams::make("0.5", "0", 20), Error);
    CHECK_THROWS_AS(QParams::make("0.5x", "0"), Error);
    try {
        QParams::make("0", "0");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Domain);
    }
}

TEST_CASE("finite pochhammer") {
    PrecisionScope s(60);
    CHECK(qpochhammer_finite(Real("0.7"), Real("0.5"), 0) == 1);
    CHECK(qpochhammer_finite(Real("0.5"), Real("0.5"), 2) == Real("0.375"));
    O q("0.9");
    O ref = oracle::poch(q, q, 40);
    CHECK(oracle::rel(qpochhammer_finite(Real("0.9"), Real("0.9"), 40), ref) < 1e-55);
}

TEST_CASE("infinite pochhammer") {
    PrecisionScope s(60);
    Real tol("1e-40"), q("0.5");
    CHECK(qpochhammer_infinite(Real(0), q, tol) == 1);
    O ref = oracle::poch(O("0.5"), O("0.5"), 400);
    CHECK(oracle::rel(qpochhammer_infinite(Real("0.5"), q, tol), ref) < 1e-40);
    Real q2 = q * q;
    Real lhs = qpochhammer_infinite(q2, q2, tol);
    Real rhs = (1 - q2) * qpochhammer_infinite(q2 * q2, q2, tol);
    CHECK(abs(lhs - rhs) / lhs < tol);
}

TEST_CASE("q-exponential") {
    PrecisionScope s(60);
    Real tol("1e-40");
    CHECK(q_exponential(Real(0), Real("0.5"), tol) == 1);
    O ref = 1 / oracle::poch_inf(O("0.3"), O("0.5"));
    CHECK(oracle::rel(q_exponential(Real("0.3"), Real("0.5"), tol), ref) < 1e-40);
    // direct series z^n / (q;q)_n
    O z("-0.25"), q("0.25"), sum = 0, t = 1;
    for (int n = 0; n < 200; ++n) {
        sum += t;
        t *= z / (1 - oracle::qp(q, n + 1));
    }
    CHECK(oracle::rel(q_exponential(Real("-0.25"), Real("0.25"), tol), sum) < 1e-40);
}

TEST_CASE("jackson integral on [0, a]") {
    QParams p = P();
    PrecisionScope s(60);
    QGrid g(0, 200);
    CHECK(abs(jackson_integral_finite(sample(g, [](int) { return Real(1); }), 0, p).value - 1) < 1e-50);
    Real expect = Real(2) / 3;
    GridFunction x = sample(g, [&](int n) { return qpow(p.q, n); });
    CHECK(abs(jackson_integral_finite(x, 0, p).value - expect) < 1e-50);
    CHECK(jackson_integral_finite(sample(g, [](int) { return Real(0); }), 0, p).value == 0);
    CHECK_THROWS_AS(jackson_integral_finite(sample(QGrid(0, 4), [](int) { return Real(1); }), 0, p), Error);
}

TEST_CASE("jackson integral on the half line") {
    QParams p = P("0.5", "0");
    PrecisionScope s(60);
    QGrid g(-200, 40);
    GridFunction z = sample(g, [](int) { return Real(0); }, DecayClass::Rapid);
    CHECK(jackson_integral_infinite(z, p).value == 0);
    // x^{-2} on x >= 1: (1-q) sum_{m>=0} q^m = 1
    GridFunction f = sample(g, [&](int n) { return n <= 0 ? qpow(p.q, -2 * n) : Real(0); }, DecayClass::Integrable);
    O ref = 0;
    for (int n = -200; n <= 0; ++n) ref += oracle::qp(O("0.5"), -n);
    ref *= O("0.5");
    double err = oracle::absdiff(jackson_integral_infinite(f, p).value, ref);
    CHECK(err < 1e-40);
    GridFunction grow = sample(g, [&](int n) { return qpow(p.q, 3 * n); }, DecayClass::Rapid);
    CHECK_THROWS_AS(jackson_integral_infinite(grow, p), Error);
    CHECK_THROWS_AS(jackson_integral_infinite(sample(g, [](int) { return Real(1); }), p), Error);
}

TEST_CASE("jackson scaling identity") {
    // int f(qx) d_qx = q^{-1} int f(x) d_qx
    QParams p = P();
    PrecisionScope s(60);
    auto f = [&](int n) { Real x = qpow(p.q, n); return x * x * exp(-x * x); };
    GridFunction a = sample(QGrid(-20, 150), [&](int n) { return f(n + 1); }, DecayClass::Rapid);
    GridFunction b = sample(QGrid(-20, 150), f, DecayClass::Rapid);
    Real lhs = jackson_integral_infinite(a, p).value;
    Real rhs = jackson_integral_infinite(b, p).value / p.q;
    CHECK(abs(lhs - rhs) / rhs < 1e-40);
}

TEST_CASE("q-derivative examples") {
    QParams p = P();
    PrecisionScope s(60);
    QGrid g(-5, 20);
    GridFunction c = q_derivative(sample(g, [](int) { return Real(3); }), p.q);
    for (Real v : c.values) CHECK(v == 0);
    GridFunction d1 = q_derivative(sample(g, [&](int n) { return qpow(p.q, n); }), p.q);
    for (Real v : d1.values) CHECK(abs(v - 1) < 1e-55);
    GridFunction d2 = q_derivative(sample(g, [&](int n) { return qpow(p.q, 2 * n); }), p.q);
    for (int n = d2.grid.n_min; n <= d2.grid.n_max; ++n) {
        Real want = (1 + p.q) * qpow(p.q, n);
        CHECK(abs(d2.at(n) - want) / want < 1e-55);
    }
}

TEST_CASE("lambda shift") {
    QParams p = P();
    PrecisionScope s(60);
    GridFunction f = sample(QGrid(-5, 20), [&](int n) { return qpow(p.q, n); });
    GridFunction id = lambda_shift(f, 0);
    CHECK(id.values == f.values);
    GridFunction back = lambda_shift(lambda_shift(f, 1), -1);
    for (int n = back.grid.n_min; n <= back.grid.n_max; ++n) CHECK(back.at(n) == f.at(n));
    GridFunction s1 = lambda_shift(f, 1);
    for (int n = s1.grid.n_min; n <= s1.grid.n_max; ++n) CHECK(abs(s1.at(n) - p.q * f.at(n)) < 1e-58);
    CHECK_THROWS_AS(lambda_shift(f, 40), Error);
}

TEST_CASE("Bessel operator annihilates constants") {
    QParams p = P("0.5", "0.5");
    PrecisionScope s(60);
    GridFunction d = q_bessel_operator(sample(QGrid(-5, 20), [](int) { return Real(1); }), p);
    for (const Real& v : d.values) CHECK(abs(v) < 1e-50);
}

TEST_CASE("decimal round trip") {
    PrecisionScope s(60);
    Real v = parse_decimal("0.1234567890123456789012345678901234567890123456789", 60);
    CHECK(parse_decimal(to_decimal(v, 65), 60) == v);
    CHECK(to_decimal(Real(0), 10) == "0");
    CHECK_THROWS_AS(parse_decimal("1e", 60), Error);
    CHECK_THROWS_AS(parse_decimal("", 60), Error);
}
