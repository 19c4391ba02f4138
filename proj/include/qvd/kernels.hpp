#pragma once

#include "qvd/transform.hpp"

#include <optional>

namespace qvd {

struct KernelSpec {
    Real c = 0;
    std::vector<Real> zeros;
    Real tail_sum = 0;

    static KernelSpec make(const Real& c, std::vector<Real> zeros);
    void validate() const;
    KernelSpec prefix(std::size_t m) const;
};

Real E_eval(const Real& t, const KernelSpec& spec);

struct ChainGap {
    std::size_t m = 0;  // prefix length
    bool defined = false;
    Real min_gap;      // min over the grid of G_{m+1} - G_m (G_n = G for the full list)
    int argmin = 0;
};

struct KernelReport {
    GridFunction kernel;
    Real mass;
    Real min_value;
    bool monotone_chain_ok = true;
    std::vector<ChainGap> chain;
};

struct KernelOptions {
    bool chain = true;
    std::size_t max_chain_zeros = 8;
    double gap_tol = 1e-25;
};

// G = F(1/E) sampled on the plan's output grid
GridFunction composite_samples(const KernelSpec& spec, const TransformPlan& plan);
KernelReport composite_kernel(const KernelSpec& spec, const TransformPlan& plan,
                              const KernelOptions& opt = {});

// G^nu(x, c, q^2) at x = q^n
Real gauss_kernel(int n, const Real& c, const QParams& p);
Real gauss_kernel_at(const Real& x, const Real& c, const QParams& p);
// h_c = G^nu(., c^2, q^2), F(h_c)(t) = e(-c^2 t^2, q^2)
GridFunction gauss_samples(const QGrid& g, const Real& c, const QParams& p);

// ||f - f * k_n||_{q,1,nu} with k_n = G^nu(., q^{2n}, q^2)
std::vector<Real> approx_identity_run(const GridFunction& f, const TransformPlan& plan,
                                      const std::vector<int>& n_list);

struct OrderDiagnostic {
    Real a_est;
    int m_est = 0;  // a_est = q^{m_est}
    std::vector<Real> ratio_profile;
};

// largest a = q^m from the scan with G/g_a non-increasing on the 16 largest-x points
OrderDiagnostic order_diagnostic(const GridFunction& G, const Lattice& L,
                                 const std::vector<int>& scan);

}  // namespace qvd
