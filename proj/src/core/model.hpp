#pragma once

#include <optional>

#include <Eigen/Sparse>

#include "core/hilbert.hpp"

// Interaction-picture Hamiltonian and Lindblad generator of
//
//   rho' = -i[H,rho] + kappa (2 a rho a† - a†a rho - rho a†a)
//          + sum_{m=1,2} Gamma_3m (2 s_m3 rho s_3m - s33 rho - rho s33)
//
// with H = H0 + V,
//   H0 = (g a s31 + O23 s32 + h.c.) - (D - D12 - D23) a†a + D23 s33 - D12 s11
//   V  = O12 s21 + h.c.
//
// Note the kappa(2 a rho a† - ...) prefactor: kappa is the field decay rate,
// so the photon number decays at 2*kappa.

namespace qlight {

struct SystemParams {
    double g = 0.0;         // atom-cavity coupling
    double omega12 = 0.0;   // ground-state drive, half Rabi frequency
    double omega23 = 0.0;   // control drive, half Rabi frequency
    double delta12 = 0.0;   // D12 = w21 - wC12
    double delta23 = 0.0;   // D23 = w32 - wC23
    std::optional<double> delta;  // D = w31 - w; defaults to D12 + D23
    double kappa = 1.0;     // cavity field decay rate (internal unit)
    double gamma31 = 0.0;   // polarization decay |3> -> |1>
    double gamma32 = 0.0;   // polarization decay |3> -> |2>
    int n_max = 8;          // Fock truncation

    double resolved_delta() const {
        return delta ? *delta : delta12 + delta23;
    }
    HilbertSpec spec() const { return HilbertSpec{n_max}; }
    void validate() const;  // throws std::invalid_argument
};

Matrix hamiltonian_h0(const SystemParams& p);
Matrix hamiltonian_v(const SystemParams& p);
Matrix hamiltonian(const SystemParams& p);  // H0 + V

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Generator acting on column-stacked density matrices:
// vec(A rho B) = (B^T (x) A) vec(rho).
Matrix liouvillian(const SystemParams& p);
SparseMatrix liouvillian_sparse(const SystemParams& p);

// Precomputed operators for the right-hand side of the master equation,
// cheaper than applying the dim^2 x dim^2 generator.
class MasterEquation {
  public:
    explicit MasterEquation(const SystemParams& p);

    const HilbertSpec& spec() const { return spec_; }
    // -i[H,rho] + dissipators, applied densely.
    Matrix apply(const Matrix& rho) const;

  private:
    HilbertSpec spec_;
    double kappa_, gamma31_, gamma32_;
    Matrix h_, a_, a_dag_, num_, s13_, s23_, s31_, s32_, s33_;
};

}  // namespace qlight
