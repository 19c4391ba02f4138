#pragma once

#include "qvd/lattice.hpp"

#include <array>
#include <limits>

namespace qvd {

// M[k][n] = c_{q,nu}(1-q) q^{n(2nu+2)} j_nu(q^{k+n}). Since j depends on k+n
// only, M(out,in)[k][n] q^{-n(2nu+2)} = M(in,out)[n][k] q^{-k(2nu+2)}.
struct TransformPlan {
    QParams params;
    QGrid in_grid;
    QGrid out_grid;
    std::vector<Real> matrix;  // row major, out rows
    // c(1-q) sum_{n>n_max} q^{n(2nu+2)} j(q^{k+n}) per output row
    std::vector<Real> tail_small;
    // c(1-q) sum_{n<n_min} q^{n(2nu+2-2p)} j(q^{k+n}), p = 1..3
    std::vector<std::array<Real, 3>> tail_large;
    LatticePtr lattice;

    const Real& at(int k, int n) const {
        return matrix[out_grid.index(k) * in_grid.size() + in_grid.index(n)];
    }
};

TransformPlan build_plan(LatticePtr L, const QGrid& in, const QGrid& out);
TransformPlan build_plan(const QParams& p, const QGrid& in, const QGrid& out);

GridFunction fourier(const GridFunction& f, const TransformPlan& plan);

// c^2 (1-q) sum_s q^{s(2nu+2)} j(q^{x+s}) j(q^{y+s}) j(q^{z+s})
Real triple_kernel(int x, int y, int z, const Lattice& L);

// T_x f by transform, multiply by j_nu(x t), transform back
GridFunction translate(const GridFunction& f, int x, const TransformPlan& plan);
// T_x f(y) = (1-q) sum_z q^{z(2nu+2)} D(x,y,z) f(z) over the window
Real translate_kernel_route(const GridFunction& f, int x, int y, const Lattice& L);

GridFunction convolve(const GridFunction& f, const GridFunction& g, const TransformPlan& plan);
// f*g(x) = c int T_x f(y) g(y) y^{2nu+1} d_qy with T_x f by the transform route
GridFunction convolve_definitional(const GridFunction& f, const GridFunction& g,
                                   const TransformPlan& plan);

struct LpNorm {
    double p = 2;  // infinity for the sup norm
    bool weighted = true;
    static LpNorm sup() { return {std::numeric_limits<double>::infinity(), false}; }
};

Real norm(const GridFunction& f, const LpNorm& spec, const QParams& params);
// c_{q,nu} int f(x) x^{2nu+1} d_qx with the decay-class tails
Real weighted_mass(const GridFunction& f, const QParams& params);

DecayClass product_class(DecayClass a, DecayClass b);

}  // namespace qvd
