#include "core/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace qlight {

int basis_index(int k, int n, const HilbertSpec& spec) {
    if (k < 1 || k > 3)
        throw std::out_of_range("atomic level index must be 1, 2 or 3");
    if (n < 0 || n > spec.n_max)
        throw std::out_of_range("photon number outside truncation");
    return (k - 1) * spec.cavity_dim() + n;
}

Matrix annihilation(const HilbertSpec& spec) {
    const int nc = spec.cavity_dim();
    Matrix a = Matrix::Zero(spec.dim(), spec.dim());
    for (int k = 0; k < 3; ++k)
        for (int n = 1; n < nc; ++n)
            a(k * nc + n - 1, k * nc + n) = std::sqrt(double(n));
    return a;
}

Matrix number_operator(const HilbertSpec& spec) {
    const int nc = spec.cavity_dim();
    Matrix num = Matrix::Zero(spec.dim(), spec.dim());
    for (int k = 0; k < 3; ++k)
        for (int n = 0; n < nc; ++n) num(k * nc + n, k * nc + n) = double(n);
    return num;
}

Matrix atomic_sigma(int k, int l, const HilbertSpec& spec) {
    if (k < 1 || k > 3 || l < 1 || l > 3)
        throw std::out_of_range("atomic level index must be 1, 2 or 3");
    const int nc = spec.cavity_dim();
    Matrix s = Matrix::Zero(spec.dim(), spec.dim());
    for (int n = 0; n < nc; ++n) s((k - 1) * nc + n, (l - 1) * nc + n) = 1.0;
    return s;
}

Vector basis_ket(int k, int n, const HilbertSpec& spec) {
    Vector v = Vector::Zero(spec.dim());
    v(basis_index(k, n, spec)) = 1.0;
    return v;
}

Complex expectation(const Matrix& rho, const Matrix& a) {
    if (rho.rows() != a.rows() || rho.cols() != a.cols())
        throw std::invalid_argument("expectation: dimension mismatch");
    return (rho * a).trace();
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_valid_density(const Matrix& rho, double herm_tol, double trace_tol,
                      double psd_tol) {
    if (rho.rows() != rho.cols()) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol) return false;
    if (std::abs(rho.trace() - Complex(1.0)) > trace_tol) return false;
    Matrix h = 0.5 * (rho + rho.adjoint());
    return min_eigenvalue(h) >= -psd_tol;
}

}  // namespace qlight
