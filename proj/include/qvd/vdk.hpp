#pragma once

#include "qvd/transform.hpp"

#include <optional>
#include <string>

namespace qvd {

struct SignPattern {
    std::vector<int> kept_indices;  // grid exponents, increasing x
    std::vector<int> signs;
    int changes = 0;
};

// EmptyPattern when every value is dropped
SignPattern sign_changes(const GridFunction& f, const Real& zero_tol);
// same, but an empty pattern counts as 0 changes
int count_sign_changes(const GridFunction& f, const Real& zero_tol);

struct NamedFunction {
    std::string name;
    GridFunction f;
    int declared_v = -1;
};

struct VdEntry {
    std::string name;
    int v_f = 0;
    int v_kf = 0;
    bool pass = true;
    SignPattern pattern_f;
    SignPattern pattern_kf;
};

struct VdReport {
    std::vector<VdEntry> entries;
    int violations = 0;
    bool pass = true;
};

VdReport vd_check(const GridFunction& K, const std::vector<NamedFunction>& corpus,
                  const TransformPlan& plan, const Real& zero_tol);

struct DqVariation {
    int v_f = 0;
    int v_dqf = 0;
    bool pass = true;
};

DqVariation dq_variation_check(const GridFunction& f, const Real& q, const Real& zero_tol);

struct EvenSeries {
    std::vector<Real> coeffs;  // gamma_n of s^{2n}
    std::optional<Real> radius_hint;
};

struct EvenPolynomial {
    std::vector<Real> coeffs;  // c_i of z^{2i}, exact degree
    int degree() const { return 2 * (static_cast<int>(coeffs.size()) - 1); }
};

struct OmegaFit {
    EvenSeries omega;
    EvenSeries transform_series;  // beta_i before inversion, beta_0 normalized
    Real raw_beta0;
    int block_start = 0;
    double digit_loss = 0;
};

OmegaFit omega_fit(const GridFunction& G, const TransformPlan& plan, int m);
EvenSeries omega_series(const GridFunction& G, const TransformPlan& plan, int m);

EvenPolynomial qn_polynomial(const EvenSeries& w, int n, const QParams& p);
EvenPolynomial Qn_polynomial(const EvenSeries& w, int n, const QParams& p);
Real rho_n(int n, const QParams& p);
Real sigma_nu(const QParams& p);
EvenSeries lq_map(const EvenSeries& phi, const Real& q);

struct PolyRoot {
    Real u_re, u_im;
    bool u_real = false;
    bool z_real = false;  // u real and >= 0
    bool borderline = false;
};

struct RootsReport {
    bool all_real = true;
    std::vector<PolyRoot> roots;
};

RootsReport real_roots_check(const EvenPolynomial& p, const Real& tol_imag,
                             const Real& leading_tol = Real("1e-40"));

Real eval_even(const EvenPolynomial& p, const Real& z);

}  // namespace qvd
