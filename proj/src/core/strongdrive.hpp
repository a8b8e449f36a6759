#pragma once

#include "core/model.hpp"

// Strong ground-state-coupling analytics in the |+->, |-> atomic basis,
// |+-> = (|1> +- |2>)/sqrt(2).
//
// With the drive splitting |+> to +O12 and |-> to -O12 and the excited
// level in between, second-order perturbation theory in (g, O23)/O12
// shifts each ground sector by its coupling operator squared over the
// splitting:
//
//   H_eff = +(1/2 O12)[g^2 a†a + O23^2 + (g O23 a + h.c.)] s++
//           -(1/2 O12)[g^2 a†a + O23^2 - (g O23 a + h.c.)] s--
//
// Each sector is a displaced harmonic oscillator, so evolution from
// |1,0> produces an atom-conditioned pair of coherent fields
//
//   alpha_+(t) = +(O23/g)(exp(-i g^2 t / 2 O12) - 1)
//   alpha_-(t) = -(O23/g)(exp(+i g^2 t / 2 O12) - 1)
//
// and with cavity decay the cavity settles into the mixture
// (|b+><b+| + |b-><b-|)/2 with b+- = -i g O23 / (2 O12 kappa +- i g^2).

namespace qlight {

struct CatSnapshot {
    double t = 0.0;    // time, units 1/kappa
    double phi = 0.0;  // O23^2 t / 2 O12
    Complex alpha_plus{0.0, 0.0};
    Complex alpha_minus{0.0, 0.0};
};

struct SteadyAmplitudes {
    Complex beta_plus{0.0, 0.0};
    Complex beta_minus{0.0, 0.0};
};

// Effective Hamiltonian above, embedded in the full 3-level space.
Matrix eff_hamiltonian_strong(const SystemParams& p);

// Closed-form snapshot of the conditional coherent amplitudes.
CatSnapshot cat_state(double t, const SystemParams& p);

// Full-space analytic state
//   (e^{i chi}|+>|a+> + e^{-i chi}|->|a->)/sqrt(2),  chi = -(O23/g)^2 sin(g^2 t/2 O12),
// the exact solution of H_eff from |1,0>.  With in_drive_frame the sector
// phases pick up the extra -+ O12 t accumulated under the bare drive V,
// which is what evolution under the full Eq.-(1) Hamiltonian produces.
Vector cat_state_vector(double t, const SystemParams& p,
                        bool in_drive_frame = false);

SteadyAmplitudes steady_amplitudes(const SystemParams& p);

// Normalized truncated coherent state on the cavity factor only
// (dimension n_max+1); throws when the truncation tail exceeds 1e-10.
Vector coherent_embed(Complex alpha, int n_max);

// Cavity-factor density matrix (|b+><b+| + |b-><b-|)/2 for the closed-form
// steady amplitudes.
Matrix steady_mixture_cavity(const SystemParams& p);

// Partial trace over the atom; returns an (n_max+1) x (n_max+1) matrix.
Matrix reduce_cavity(const Matrix& rho, const HilbertSpec& spec);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma);

}  // namespace qlight
