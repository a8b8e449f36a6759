#include "core/solvers.hpp"

#include <cmath>

#include <Eigen/SparseLU>

namespace qlight {

namespace {

Matrix unvec(const Eigen::VectorXcd& x, int d) {
    return Eigen::Map<const Matrix>(x.data(), d, d);
}

double frobenius(const SparseMatrix& m) {
    double s = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            s += std::norm(it.value());
    return std::sqrt(s);
}

[[noreturn]] void diagnose_singular(const SparseMatrix& l) {
    // Reached only when the constrained solve failed; decide between a
    // genuinely degenerate fixed-point space and a numerical failure.
    const Eigen::Index n = l.rows();
    if (n > 20000)
        throw InvariantViolation(
            "steady-state solve failed and the generator is too large for "
            "null-space diagnosis");
    Eigen::FullPivLU<Matrix> lu((Matrix(l)));
    lu.setThreshold(1e-9 * std::sqrt(double(n)));
    if (lu.dimensionOfKernel() > 1)
        throw DegenerateSteadyState(
            "Liouvillian null space has dimension > 1; the steady state is "
            "not unique");
    throw InvariantViolation("steady-state residual exceeds contract");
}

}  // namespace

Matrix steady_state(const SparseMatrix& l) {
    const Eigen::Index d2 = l.rows();
    const int d = int(std::lround(std::sqrt(double(d2))));
    if (Eigen::Index(d) * d != d2 || l.cols() != d2)
        throw std::invalid_argument("steady_state: not a superoperator");

    // Replace one row with the trace constraint tr(rho) = 1.
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(size_t(l.nonZeros()) + size_t(d));
    for (int k = 0; k < l.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(l, k); it; ++it)
            if (it.row() != 0)
                trip.emplace_back(int(it.row()), int(it.col()), it.value());
    for (int i = 0; i < d; ++i)
        trip.emplace_back(0, i * d + i, Complex(1.0));
    SparseMatrix m(d2, d2);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu(m);
    if (lu.info() != Eigen::Success) diagnose_singular(l);

    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(d2);
    b(0) = 1.0;
    Eigen::VectorXcd x = lu.solve(b);
    // One round of iterative refinement.
    x += lu.solve(Eigen::VectorXcd(b - m * x));
    if (!x.allFinite()) diagnose_singular(l);

    const double residual = (l * x).norm();
    if (residual > 1e-10 * frobenius(l)) diagnose_singular(l);

    Matrix rho = unvec(x, d);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    return rho;
}

Matrix steady_state(const Matrix& l) {
    return steady_state(SparseMatrix(l.sparseView()));
}

Matrix steady_state(const SystemParams& p) {
    return steady_state(liouvillian_sparse(p));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
     -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695,
                           393.0 / 640,     -92097.0 / 339200,
                           187.0 / 2100,    1.0 / 40};

struct Rk45 {
    const MasterEquation& eq;
    double rtol = 1e-10;
    double atol = 1e-13;

    // Advances rho from t to t_target, adapting the step size.
    void integrate(Matrix& rho, double t, double t_target) const {
        const double span = t_target - t;
        if (span <= 0.0) return;
        double h = span / 100.0;
        const double h_min = std::max(span, 1.0) * 1e-13;
        Matrix k[7];
        k[0] = eq.apply(rho);  // FSAL
        while (t < t_target) {
            h = std::min(h, t_target - t);
            for (int i = 1; i < 7; ++i) {
                Matrix y = rho;
                for (int j = 0; j < i; ++j)
                    if (kA[i][j] != 0.0) y += (h * kA[i][j]) * k[j];
                k[i] = eq.apply(y);
            }
            Matrix y5 = rho;
            Matrix err = Matrix::Zero(rho.rows(), rho.cols());
            for (int i = 0; i < 7; ++i) {
                if (kB5[i] != 0.0) y5 += (h * kB5[i]) * k[i];
                const double db = kB5[i] - kB4[i];
                if (db != 0.0) err += (h * db) * k[i];
            }
            const double scale =
                atol + rtol * std::max(rho.cwiseAbs().maxCoeff(),
                                       y5.cwiseAbs().maxCoeff());
            const double err_norm = err.cwiseAbs().maxCoeff() / scale;
            if (err_norm <= 1.0) {
                t += h;
                rho = std::move(y5);
                k[0] = k[6];  // FSAL reuse
            }
            const double factor =
                (err_norm > 0.0)
                    ? 0.9 * std::pow(err_norm, -0.2)
                    : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
            if (h < h_min)
                throw StiffnessFailure(
                    "step size underflow in master-equation integration");
        }
    }
};

void check_density_invariants(const Matrix& rho) {
    if (std::abs(rho.trace() - Complex(1.0)) > 1e-8)
        throw InvariantViolation("evolve: trace drift beyond 1e-8");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw InvariantViolation("evolve: Hermiticity drift beyond 1e-8");
    if (min_eigenvalue(Matrix(0.5 * (rho + rho.adjoint()))) < -1e-6)
        throw InvariantViolation("evolve: negative eigenvalue beyond 1e-6");
}

}  // namespace

std::vector<Matrix> evolve(const SystemParams& p, const Matrix& rho0,
                           const TimeGrid& grid) {
    p.validate();
    grid.validate();
    if (rho0.rows() != p.spec().dim() || rho0.cols() != p.spec().dim())
        throw std::invalid_argument("evolve: initial state dimension mismatch");

    const MasterEquation eq(p);
    const Rk45 stepper{eq};
    std::vector<Matrix> out;
    out.reserve(size_t(grid.n_steps) + 1);
    out.push_back(rho0);

    Matrix rho = rho0;
    const double dt = (grid.t1 - grid.t0) / grid.n_steps;
    for (int i = 1; i <= grid.n_steps; ++i) {
        const double ta = grid.t0 + (i - 1) * dt;
        const double tb = (i == grid.n_steps) ? grid.t1 : grid.t0 + i * dt;
        stepper.integrate(rho, ta, tb);
        check_density_invariants(rho);
        out.push_back(rho);
    }
    return out;
}

int auto_truncate(SystemParams p) {
    p.validate();
    // Without the ground-state drive nothing climbs the ladder; the floor
    // truncation always suffices (and the zero-drive generator can even be
    // degenerate, so probing it is pointless).
    if (p.omega12 == 0.0) return 8;
    for (int nm = 8; nm <= 40; nm += 4) {
        p.n_max = nm;
        const Matrix rho = steady_state(p);
        const int nc = nm + 1;
        double top = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int n = nm - 1; n <= nm; ++n)
                top += rho(k * nc + n, k * nc + n).real();
        if (top < 1e-8) return nm;
    }
    throw TruncationError("auto_truncate: n_max cap of 40 exceeded");
}

}  // namespace qlight
