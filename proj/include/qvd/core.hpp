#pragma once

#include "qvd/error.hpp"
#include "qvd/real.hpp"

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qvd {

struct QParams {
    Real q;
    Real nu;
    int precision_digits = 60;
    Real tol;
    std::string q_text;
    std::string nu_text;

    // validating constructor; DomainError outside 0<q<1, nu>-1, digits>=30, tol>0
    static QParams make(std::string_view q, std::string_view nu, int digits = 60,
                        std::string_view tol = "1e-40");
};

// {q^n : n_min <= n <= n_max}; the largest point is q^{n_min}
struct QGrid {
    int n_min = 0;
    int n_max = 0;

    QGrid() = default;
    QGrid(int lo, int hi);
    int size() const { return n_max - n_min + 1; }
    bool contains(int n) const { return n >= n_min && n <= n_max; }
    std::size_t index(int n) const { return static_cast<std::size_t>(n - n_min); }
    bool operator==(const QGrid& o) const = default;
};

enum class DecayClass { Rapid, Integrable, Bounded, Unknown };

const char* decay_name(DecayClass c);
DecayClass decay_from_name(std::string_view s);

struct GridFunction {
    QGrid grid;
    std::vector<Real> values;
    DecayClass decay = DecayClass::Unknown;
    // declared class of the transform; F swaps the two
    DecayClass spectral = DecayClass::Unknown;
    Real tail_bound = 0;

    GridFunction() = default;
    GridFunction(QGrid g, DecayClass d = DecayClass::Unknown,
                 DecayClass s = DecayClass::Unknown);

    Real& at(int n) { return values[grid.index(n)]; }
    const Real& at(int n) const { return values[grid.index(n)]; }
    void check_finite() const;
    Real sup() const;
};

GridFunction sample(const QGrid& g, const std::function<Real(int)>& f,
                    DecayClass d = DecayClass::Unknown, DecayClass s = DecayClass::Unknown);

struct Constants {
    Real c_q_nu;
    Real B_q_nu;
    Real sigma_nu;
};

Constants compute_constants(const QParams& p);
Constants constants_at(const Real& q, const Real& nu, int digits);
// sup bound for j_nu on [0,1]: (-q^2;q^2)(-q^{2nu+2};q^2)/(q^{2nu+2};q^2)
Real bessel_bound(const QParams& p);

Real qpow(const Real& q, long n);

Real qpochhammer_finite(const Real& a, const Real& q, int n);
Real qpochhammer_infinite(const Real& a, const Real& q, const Real& tol);
Real q_exponential(const Real& z, const Real& q, const Real& tol);

struct JacksonResult {
    Real value;
    Real tail_small;  // contribution / estimate beyond n_max
    Real tail_large;  // contribution / estimate below n_min
};

// (1-q) sum_{n>=m} q^n f(q^n); points past n_max extend by the boundary value
JacksonResult jackson_integral_finite(const GridFunction& f, int m, const QParams& p);
JacksonResult jackson_integral_infinite(const GridFunction& f, const QParams& p);

// Extension of a grid function off its window.
//  small x (n > n_max): B + A rho^{n - n_max} through the last three samples,
//  B + A (n - n_max) when rho is 1 (logarithmic growth, nu = 0), or the
//  constant f(q^{n_max}) when the differences vanish or rho is unusable
//  large x (n < n_min): 0 for rapid, sum_p alpha_p x^{-2p} fitted to the
//  three outermost samples for integrable
struct TailModel {
    enum class Small { Constant, Geometric, Linear };
    Real small_value = 0;
    Real small_b = 0, small_a = 0, small_rho = 0;
    Small small_kind = Small::Constant;
    int n_max = 0;
    std::array<Real, 3> alpha{};
    bool power_law = false;

    static TailModel fit(const GridFunction& f, const Real& q);
    // geometric model usable against a weight ratio q^w per step
    bool geometric_for(const Real& qw) const {
        return small_kind == Small::Linear || (small_kind == Small::Geometric && abs(small_rho) * qw < 1);
    }
    Real small_at(long n, const Real& qw) const;
    Real large_value(int n, const Real& q) const;
};

GridFunction q_derivative(const GridFunction& f, const Real& q);
GridFunction lambda_shift(const GridFunction& f, int k);
GridFunction q_bessel_operator(const GridFunction& f, const QParams& p);

}  // namespace qvd
