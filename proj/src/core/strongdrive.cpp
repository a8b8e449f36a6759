#include "core/strongdrive.hpp"

#include <cmath>
#include <stdexcept>

namespace qlight {

Matrix eff_hamiltonian_strong(const SystemParams& p) {
    p.validate();
    if (p.omega12 <= 0.0)
        throw std::invalid_argument(
            "eff_hamiltonian_strong requires omega12 > 0");
    const HilbertSpec spec = p.spec();
    const int d = spec.dim();
    const Matrix a = annihilation(spec);
    const Matrix drive = p.g * p.omega23 * (a + a.adjoint());
    const Matrix shift = p.g * p.g * number_operator(spec) +
                         p.omega23 * p.omega23 * Matrix::Identity(d, d);

    // s++ and s-- on the atomic factor, |+-> = (|1> +- |2>)/sqrt(2).
    const Matrix s11 = atomic_sigma(1, 1, spec);
    const Matrix s22 = atomic_sigma(2, 2, spec);
    const Matrix s12 = atomic_sigma(1, 2, spec);
    const Matrix s21 = atomic_sigma(2, 1, spec);
    const Matrix spp = 0.5 * (s11 + s22 + s12 + s21);
    const Matrix smm = 0.5 * (s11 + s22 - s12 - s21);

    const double c = 1.0 / (2.0 * p.omega12);
    return c * ((shift + drive) * spp) - c * ((shift - drive) * smm);
}

CatSnapshot cat_state(double t, const SystemParams& p) {
    p.validate();
    if (p.omega12 <= 0.0 || p.g <= 0.0)
        throw std::invalid_argument("cat_state requires omega12 > 0, g > 0");
    const Complex i(0.0, 1.0);
    const double delta = p.g * p.g / (2.0 * p.omega12);
    const double ratio = p.omega23 / p.g;
    CatSnapshot snap;
    snap.t = t;
    snap.phi = p.omega23 * p.omega23 * t / (2.0 * p.omega12);
    snap.alpha_plus = ratio * (std::exp(-i * delta * t) - 1.0);
    snap.alpha_minus = -ratio * (std::exp(i * delta * t) - 1.0);
    return snap;
}

Vector coherent_embed(Complex alpha, int n_max) {
    if (n_max < 1) throw std::invalid_argument("coherent_embed: n_max >= 1");
    Vector v(n_max + 1);
    Complex amp = 1.0;
    v(0) = amp;
    for (int n = 1; n <= n_max; ++n) {
        amp *= alpha / std::sqrt(double(n));
        v(n) = amp;
    }
    const double tail = 1.0 - std::exp(-std::norm(alpha)) * v.squaredNorm();
    if (tail > 1e-10)
        throw std::invalid_argument(
            "coherent_embed: truncation tail exceeds 1e-10");
    return v.normalized();
}

Vector cat_state_vector(double t, const SystemParams& p, bool in_drive_frame) {
    const CatSnapshot snap = cat_state(t, p);
    const HilbertSpec spec = p.spec();
    const int nc = spec.cavity_dim();
    const Complex i(0.0, 1.0);
    const double delta = p.g * p.g / (2.0 * p.omega12);
    const double ratio = p.omega23 / p.g;
    double chi = -ratio * ratio * std::sin(delta * t);
    if (in_drive_frame) chi -= p.omega12 * t;

    const Vector cav_p = coherent_embed(snap.alpha_plus, spec.n_max);
    const Vector cav_m = coherent_embed(snap.alpha_minus, spec.n_max);
    Vector out = Vector::Zero(spec.dim());
    // |+-> = (|1> +- |2>)/sqrt(2); sectors carry e^{+-i chi}.
    const Complex wp = 0.5 * std::exp(i * chi);
    const Complex wm = 0.5 * std::exp(-i * chi);
    out.segment(0, nc) = wp * cav_p + wm * cav_m;
    out.segment(nc, nc) = wp * cav_p - wm * cav_m;
    return out;
}

SteadyAmplitudes steady_amplitudes(const SystemParams& p) {
    p.validate();
    const double g2 = p.g * p.g;
    const double dk = 2.0 * p.omega12 * p.kappa;
    if (g2 == 0.0 && dk == 0.0)
        throw std::invalid_argument("steady_amplitudes: zero denominator");
    const Complex i(0.0, 1.0);
    const Complex num = -i * p.g * p.omega23;
    return {num / (dk + i * g2), num / (dk - i * g2)};
}

Matrix steady_mixture_cavity(const SystemParams& p) {
    const SteadyAmplitudes b = steady_amplitudes(p);
    const Vector vp = coherent_embed(b.beta_plus, p.n_max);
    const Vector vm = coherent_embed(b.beta_minus, p.n_max);
    return 0.5 * (vp * vp.adjoint() + vm * vm.adjoint());
}

Matrix reduce_cavity(const Matrix& rho, const HilbertSpec& spec) {
    if (rho.rows() != spec.dim() || rho.cols() != spec.dim())
        throw std::invalid_argument("reduce_cavity: dimension mismatch");
    const int nc = spec.cavity_dim();
    Matrix out = Matrix::Zero(nc, nc);
    for (int k = 0; k < 3; ++k)
        out += rho.block(k * nc, k * nc, nc, nc);
    return out;
}

namespace {

Matrix hermitian_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (m + m.adjoint())));
    const Vector sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>();
    return es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    // tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the sum of the singular
    // values of sqrt(rho) sqrt(sigma); the SVD keeps full precision where
    // an eigenvalue square root would not.
    Eigen::JacobiSVD<Matrix> svd(
        Matrix(hermitian_sqrt(rho) * hermitian_sqrt(sigma)));
    const double tr = svd.singularValues().sum();
    return tr * tr;
}

}  // namespace qlight
