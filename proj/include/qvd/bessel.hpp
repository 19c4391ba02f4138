#pragma once

#include "qvd/lattice.hpp"

namespace qvd {

BesselEval j_nu(const Real& x, const QParams& p);
Real i_nu(const Real& x, const QParams& p);

// K_nu(q^n) as the lattice transform of (1+t^2)^{-1}
LatticeEval k_nu_eval(int n, const Lattice& L);
Real k_nu(int n, const Lattice& L);
// g_a(q^n) for any a > 0, transform of (1+t^2/a^2)^{-1}
Real g_a(int n, const Real& a, const Lattice& L);

struct WronskianReport {
    Real mean;
    Real spread;  // (max-min)/|mean|
    std::vector<int> points;
    std::vector<Real> values;
};

// x^{2nu+2}[K_nu I_{nu+1}/(1-q^{2nu+2}) + K_{nu+1} I_nu] at five interior points
WronskianReport wronskian(const Lattice& L, const QGrid& window);
// ConstancyViolation if spread >= 10 tol
Real d_nu(const Lattice& L, const QGrid& window);

}  // namespace qvd
