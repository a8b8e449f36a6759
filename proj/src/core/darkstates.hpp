#pragma once

#include <utility>
#include <vector>

#include "core/model.hpp"

// Analytic dark-state ladder of the undriven Hamiltonian H0 at zero
// detunings:
//
//   |Psi_0> = |1,0>
//   |Psi_n> = Q_n |1,n> - R_n |2,n-1>,   n >= 1,
//   Q_n = O23 / sqrt(g^2 n + O23^2),  R_n = g sqrt(n) / sqrt(g^2 n + O23^2).
//
// The sign convention (minus on R_n) is fixed; matrix-element results
// depend on it.

namespace qlight {

struct DarkStateVector {
    int n = 0;
    double q = 1.0;  // Q_n (1 for n = 0)
    double r = 0.0;  // R_n (0 for n = 0)
    Vector vec;      // embedding in the truncated space
};

// Closed-form (Q_n, R_n) for n >= 1; throws when both couplings vanish.
std::pair<double, double> qn_rn(int n, double g, double omega23);

DarkStateVector dark_state(int n, const SystemParams& p);

// -O12 sum_{n=0}^{n_max-1} Q_n R_{n+1} |Psi_{n+1}><Psi_n| + h.c.,
// with Q_0 = 1 so the n=0 link matches <Psi_1|V|Psi_0> exactly.
Matrix eff_hamiltonian_weak(const SystemParams& p);

// Gamma_n = |<Psi_{n-1}| sqrt(kappa) a |Psi_n>|^2
//         = n kappa (O23^2 + g^2(n-1)) / (O23^2 + g^2 n),  n >= 1.
double dark_decay_rate(int n, const SystemParams& p);

// Bright-state energies +-sqrt(n g^2 + O23^2), n >= 1.
std::pair<double, double> bright_energies(int n, const SystemParams& p);

// P_n = <Psi_n| rho |Psi_n> for n = 0..n_upto (raw, not renormalized over
// the dark subspace).
std::vector<double> dark_populations(const Matrix& rho,
                                     const SystemParams& p, int n_upto);

}  // namespace qlight
