#include "core/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qlight {

double photon_number(const Matrix& rho, const HilbertSpec& spec) {
    const int nc = spec.cavity_dim();
    double n = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < nc; ++m)
            n += m * rho(k * nc + m, k * nc + m).real();
    return n;
}

double excited_population(const Matrix& rho, const HilbertSpec& spec) {
    const int nc = spec.cavity_dim();
    double p = 0.0;
    for (int m = 0; m < nc; ++m) p += rho(2 * nc + m, 2 * nc + m).real();
    return p;
}

std::optional<double> g2_zero(const Matrix& rho, const HilbertSpec& spec) {
    const double n = photon_number(rho, spec);
    if (n <= 1e-12) return std::nullopt;
    const int nc = spec.cavity_dim();
    double n2 = 0.0;  // <a†² a²> = <n(n-1)>
    for (int k = 0; k < 3; ++k)
        for (int m = 2; m < nc; ++m)
            n2 += double(m) * (m - 1) * rho(k * nc + m, k * nc + m).real();
    return n2 / (n * n);
}

std::optional<double> photon_ratio(const Matrix& rho,
                                   const HilbertSpec& spec) {
    const double p = excited_population(rho, spec);
    if (p <= 1e-14) return std::nullopt;
    return photon_number(rho, spec) / p;
}

ConcurrenceResult concurrence_2x2(const Matrix& rho,
                                  const HilbertSpec& spec) {
    const int nc = spec.cavity_dim();
    // Subspace order |1,0>, |1,1>, |2,0>, |2,1>.
    const std::array<int, 4> idx = {0, 1, nc, nc + 1};
    Eigen::Matrix4cd r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = rho(idx[i], idx[j]);
    const double tr = r.trace().real();
    if (tr < 1e-10) return {0.0, tr};
    r /= tr;

    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();  // sigma_y (x) sigma_y
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    // The Wootters lambda_i (decreasing square roots of the eigenvalues of
    // r yy r* yy) are the singular values of sqrt(r) yy conj(sqrt(r)),
    // which avoids losing half the precision to the square root.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(
        Eigen::Matrix4cd(0.5 * (r + r.adjoint())));
    const Eigen::Vector4cd sq =
        es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>();
    const Eigen::Matrix4cd root =
        es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(
        Eigen::Matrix4cd(root * yy * root.conjugate()));
    const auto& lam = svd.singularValues();  // already decreasing
    return {std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3)), tr};
}

ObservableSet evaluate_observables(const Matrix& rho,
                                   const HilbertSpec& spec) {
    ObservableSet out;
    out.n_photon = photon_number(rho, spec);
    out.p33 = excited_population(rho, spec);
    out.g2_zero = g2_zero(rho, spec);
    out.ratio = photon_ratio(rho, spec);
    const ConcurrenceResult c = concurrence_2x2(rho, spec);
    out.concurrence = c.value;
    out.concurrence_trace = c.projected_trace;
    return out;
}

}  // namespace qlight
