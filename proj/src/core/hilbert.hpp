#pragma once

#include <complex>
#include <Eigen/Dense>

// Operators and states on the truncated space H_atom(3) x H_cav(n_max+1).
//
// Indexing is atom-major and fixed across the whole library:
//   index(k, n) = (k-1)*(n_max+1) + n,   k in {1,2,3}, n in 0..n_max.
// All rates are expressed in units of the cavity-field decay rate kappa.

namespace qlight {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct HilbertSpec {
    int n_max = 1;  // highest retained Fock level, >= 1

    int cavity_dim() const { return n_max + 1; }
    int dim() const { return 3 * (n_max + 1); }
    bool operator==(const HilbertSpec&) const = default;
};

// Flat index of |k, n>; throws std::out_of_range on bad k or n.
int basis_index(int k, int n, const HilbertSpec& spec);

// I_3 (x) a_cav with <n-1| a_cav |n> = sqrt(n).
Matrix annihilation(const HilbertSpec& spec);

// a†a on the full space.
Matrix number_operator(const HilbertSpec& spec);

// (|k><l|) (x) I_cav, k,l in {1,2,3}.
Matrix atomic_sigma(int k, int l, const HilbertSpec& spec);

// Unit vector for |k, n>.
Vector basis_ket(int k, int n, const HilbertSpec& spec);

// tr(rho A)
Complex expectation(const Matrix& rho, const Matrix& a);

// Density-matrix sanity: Hermitian within herm_tol, unit trace within
// trace_tol, smallest eigenvalue >= -psd_tol.
bool is_valid_density(const Matrix& rho, double herm_tol = 1e-10,
                      double trace_tol = 1e-10, double psd_tol = 1e-8);

double min_eigenvalue(const Matrix& hermitian);

}  // namespace qlight
