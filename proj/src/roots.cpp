#include "qvd/vdk.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Eigenvalues>

namespace qvd {

RootsReport real_roots_check(const EvenPolynomial& p, const Real& tol_imag, const Real& leading_tol) {
    if (p.coeffs.empty()) fail(ErrorCode::InvalidArgument, "empty polynomial");
    RootsReport r;
    const int d = static_cast<int>(p.coeffs.size()) - 1;
    if (d == 0) return r;
    unsigned digits = 0;
    Real big = 0;
    for (const auto& c : p.coeffs) {
        digits = std::max(digits, c.precision());
        if (abs(c) > big) big = abs(c);
    }
    PrecisionScope scope(static_cast<int>(digits));
    const Real& lead = p.coeffs.back();
    if (abs(lead) <= leading_tol * big) fail(ErrorCode::DegenerateLeading, "leading coefficient below tolerance");
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    Mat C = Mat::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -p.coeffs[i] / lead;
    Eigen::EigenSolver<Mat> es(C, false);
    if (es.info() != Eigen::Success) fail(ErrorCode::NonConvergent, "companion eigenvalues did not converge");
    const auto& ev = es.eigenvalues();
    const Real tiny = ten_pow(-static_cast<int>(digits) + 5, static_cast<int>(digits));
    for (int i = 0; i < d; ++i) {
        PolyRoot root;
        root.u_re = ev(i).real();
        root.u_im = ev(i).imag();
        Real mag = sqrt(root.u_re * root.u_re + root.u_im * root.u_im);
        Real scale = mag > tiny ? mag : tiny;
        Real rel = abs(root.u_im) / scale;
        root.u_real = rel <= tol_imag;
        root.z_real = root.u_real && root.u_re >= -tol_imag * scale;
        root.borderline = rel > tol_imag / 100 && rel <= tol_imag * 100;
        if (!root.z_real) r.all_real = false;
        r.roots.push_back(root);
    }
    return r;
}

}  // namespace qvd
