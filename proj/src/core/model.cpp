#include "core/model.hpp"

#include <stdexcept>
#include <vector>

namespace qlight {

void SystemParams::validate() const {
    if (g < 0 || omega12 < 0 || omega23 < 0 || kappa < 0 || gamma31 < 0 ||
        gamma32 < 0)
        throw std::invalid_argument("rates must be non-negative");
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
}

Matrix hamiltonian_h0(const SystemParams& p) {
    p.validate();
    const HilbertSpec spec = p.spec();
    const Matrix a = annihilation(spec);
    Matrix h = p.g * (a * atomic_sigma(3, 1, spec)) +
               p.omega23 * atomic_sigma(3, 2, spec);
    h += h.adjoint().eval();
    h -= (p.resolved_delta() - p.delta12 - p.delta23) * number_operator(spec);
    h += p.delta23 * atomic_sigma(3, 3, spec);
    h -= p.delta12 * atomic_sigma(1, 1, spec);
    return h;
}

Matrix hamiltonian_v(const SystemParams& p) {
    p.validate();
    const HilbertSpec spec = p.spec();
    return p.omega12 *
           (atomic_sigma(2, 1, spec) + atomic_sigma(1, 2, spec));
}

Matrix hamiltonian(const SystemParams& p) {
    return hamiltonian_h0(p) + hamiltonian_v(p);
}

namespace {

// Accumulate coeff * (B^T (x) A) into triplets.
void add_kron(std::vector<Eigen::Triplet<Complex>>& out, Complex coeff,
              const Matrix& bt, const Matrix& a) {
    const int d = int(a.rows());
    for (int bc = 0; bc < d; ++bc)
        for (int br = 0; br < d; ++br) {
            const Complex vb = bt(br, bc);
            if (vb == Complex(0)) continue;
            for (int ac = 0; ac < d; ++ac)
                for (int ar = 0; ar < d; ++ar) {
                    const Complex va = a(ar, ac);
                    if (va == Complex(0)) continue;
                    out.emplace_back(br * d + ar, bc * d + ac,
                                     coeff * vb * va);
                }
        }
}

}  // namespace

SparseMatrix liouvillian_sparse(const SystemParams& p) {
    p.validate();
    const HilbertSpec spec = p.spec();
    const int d = spec.dim();
    const Matrix h = hamiltonian(p);
    const Matrix a = annihilation(spec);
    const Matrix ad = a.adjoint();
    const Matrix num = ad * a;
    const Matrix id = Matrix::Identity(d, d);
    const Complex i(0.0, 1.0);

    std::vector<Eigen::Triplet<Complex>> trip;
    // -i (I (x) H - H^T (x) I)
    add_kron(trip, -i, id, h);
    add_kron(trip, i, h.transpose(), id);
    // kappa (2 a rho a† - a†a rho - rho a†a)
    add_kron(trip, 2.0 * p.kappa, ad.transpose(), a);
    add_kron(trip, -p.kappa, id, num);
    add_kron(trip, -p.kappa, num.transpose(), id);
    // Gamma_3m (2 s_m3 rho s_3m - s33 rho - rho s33)
    const Matrix s33 = atomic_sigma(3, 3, spec);
    for (int m = 1; m <= 2; ++m) {
        const double gam = (m == 1) ? p.gamma31 : p.gamma32;
        if (gam == 0.0) continue;
        const Matrix c = atomic_sigma(m, 3, spec);
        add_kron(trip, 2.0 * gam, atomic_sigma(3, m, spec).transpose(), c);
        add_kron(trip, -gam, id, s33);
        add_kron(trip, -gam, s33.transpose(), id);
    }

    SparseMatrix l(d * d, d * d);
    l.setFromTriplets(trip.begin(), trip.end());
    return l;
}

Matrix liouvillian(const SystemParams& p) {
    return Matrix(liouvillian_sparse(p));
}

MasterEquation::MasterEquation(const SystemParams& p)
    : spec_(p.spec()),
      kappa_(p.kappa),
      gamma31_(p.gamma31),
      gamma32_(p.gamma32),
      h_(hamiltonian(p)),
      a_(annihilation(spec_)),
      a_dag_(a_.adjoint()),
      num_(a_dag_ * a_),
      s13_(atomic_sigma(1, 3, spec_)),
      s23_(atomic_sigma(2, 3, spec_)),
      s31_(atomic_sigma(3, 1, spec_)),
      s32_(atomic_sigma(3, 2, spec_)),
      s33_(atomic_sigma(3, 3, spec_)) {
    p.validate();
}

Matrix MasterEquation::apply(const Matrix& rho) const {
    const Complex i(0.0, 1.0);
    Matrix out = -i * (h_ * rho - rho * h_);
    if (kappa_ != 0.0)
        out +=
            kappa_ * (2.0 * (a_ * rho * a_dag_) - num_ * rho - rho * num_);
    if (gamma31_ != 0.0)
        out += gamma31_ *
               (2.0 * (s13_ * rho * s31_) - s33_ * rho - rho * s33_);
    if (gamma32_ != 0.0)
        out += gamma32_ *
               (2.0 * (s23_ * rho * s32_) - s33_ * rho - rho * s33_);
    return out;
}

}  // namespace qlight
