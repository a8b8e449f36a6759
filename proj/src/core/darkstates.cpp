#include "core/darkstates.hpp"

#include <cmath>
#include <stdexcept>

namespace qlight {

std::pair<double, double> qn_rn(int n, double g, double omega23) {
    if (n < 1) throw std::invalid_argument("qn_rn: n must be >= 1");
    if (g == 0.0 && omega23 == 0.0)
        throw std::invalid_argument("qn_rn: both couplings zero");
    const double denom = std::sqrt(g * g * n + omega23 * omega23);
    return {omega23 / denom, g * std::sqrt(double(n)) / denom};
}

DarkStateVector dark_state(int n, const SystemParams& p) {
    p.validate();
    const HilbertSpec spec = p.spec();
    if (n < 0 || n > spec.n_max)
        throw std::out_of_range("dark_state: n outside truncation");
    if (n == 0) return {0, 1.0, 0.0, basis_ket(1, 0, spec)};
    const auto [q, r] = qn_rn(n, p.g, p.omega23);
    Vector v = q * basis_ket(1, n, spec) - r * basis_ket(2, n - 1, spec);
    return {n, q, r, std::move(v)};
}

Matrix eff_hamiltonian_weak(const SystemParams& p) {
    p.validate();
    const HilbertSpec spec = p.spec();
    Matrix h = Matrix::Zero(spec.dim(), spec.dim());
    DarkStateVector lower = dark_state(0, p);
    for (int n = 0; n < spec.n_max; ++n) {
        DarkStateVector upper = dark_state(n + 1, p);
        const double coupling = -p.omega12 * lower.q * upper.r;
        h += coupling * (upper.vec * lower.vec.adjoint());
        lower = std::move(upper);
    }
    h += h.adjoint().eval();
    return h;
}

double dark_decay_rate(int n, const SystemParams& p) {
    if (n < 1) throw std::invalid_argument("dark_decay_rate: n must be >= 1");
    const double o2 = p.omega23 * p.omega23;
    const double g2 = p.g * p.g;
    if (o2 == 0.0 && g2 == 0.0)
        throw std::invalid_argument("dark_decay_rate: both couplings zero");
    return n * p.kappa * (o2 + g2 * (n - 1)) / (o2 + g2 * n);
}

std::pair<double, double> bright_energies(int n, const SystemParams& p) {
    if (n < 1) throw std::invalid_argument("bright_energies: n must be >= 1");
    const double e = std::sqrt(n * p.g * p.g + p.omega23 * p.omega23);
    return {e, -e};
}

std::vector<double> dark_populations(const Matrix& rho,
                                     const SystemParams& p, int n_upto) {
    if (n_upto > p.n_max)
        throw std::out_of_range("dark_populations: n_upto beyond truncation");
    std::vector<double> out;
    out.reserve(size_t(n_upto) + 1);
    for (int n = 0; n <= n_upto; ++n) {
        const Vector v = dark_state(n, p).vec;
        out.push_back(std::real(v.dot(rho * v)));
    }
    return out;
}

}  // namespace qlight
