#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/strongdrive.hpp"

using namespace qlight;

namespace {

SystemParams strong_params(double omega12) {
    SystemParams p;
    p.g = 10.0;
    p.omega23 = 3.0;
    p.omega12 = omega12;
    p.n_max = 12;
    return p;
}

Vector plus_ket(int n, const HilbertSpec& spec) {
    return ((basis_ket(1, n, spec) + basis_ket(2, n, spec)) / std::sqrt(2.0))
        .eval();
}

Vector minus_ket(int n, const HilbertSpec& spec) {
    return ((basis_ket(1, n, spec) - basis_ket(2, n, spec)) / std::sqrt(2.0))
        .eval();
}

}  // namespace

TEST_CASE("strong-drive effective Hamiltonian matrix elements") {
    // The |+> sector sits 2*omega12 above |->; second-order shifts push
    // the upper sector up and the lower sector down, so the |+> block
    // carries coefficient +1/(2 omega12) and the |-> block its negative.
    const SystemParams p = strong_params(50.0);
    const HilbertSpec spec = p.spec();
    const Matrix h = eff_hamiltonian_strong(p);
    const double lambda = p.g * p.omega23 / (2.0 * p.omega12);  // 0.3
    const double theta = p.omega23 * p.omega23 / (2.0 * p.omega12);  // 0.09

    CHECK(plus_ket(0, spec).dot(h * plus_ket(1, spec)).real() ==
          doctest::Approx(lambda).epsilon(1e-12));
    CHECK(plus_ket(0, spec).dot(h * plus_ket(0, spec)).real() ==
          doctest::Approx(theta).epsilon(1e-12));
    CHECK(minus_ket(0, spec).dot(h * minus_ket(0, spec)).real() ==
          doctest::Approx(-theta).epsilon(1e-12));

    // Sector symmetry: diagonal parts are opposite, the displacement
    // (a + a†) part is shared.
    for (int n = 0; n <= 4; ++n) {
        CHECK(std::abs(minus_ket(n, spec).dot(h * minus_ket(n, spec)) +
                       plus_ket(n, spec).dot(h * plus_ket(n, spec))) < 1e-12);
        CHECK(std::abs(minus_ket(n, spec).dot(h * minus_ket(n + 1, spec)) -
                       plus_ket(n, spec).dot(h * plus_ket(n + 1, spec))) <
              1e-12);
    }

    // no cross terms between the sectors, nothing touches |3>
    CHECK(std::abs(plus_ket(0, spec).dot(h * minus_ket(0, spec))) < 1e-13);
    CHECK((h * basis_ket(3, 0, spec)).norm() < 1e-13);

    SystemParams bad = p;
    bad.omega12 = 0.0;
    CHECK_THROWS_AS(eff_hamiltonian_strong(bad), std::invalid_argument);
}

TEST_CASE("analytic cat snapshot") {
    const SystemParams p = strong_params(50.0);

    const CatSnapshot at0 = cat_state(0.0, p);
    CHECK(std::abs(at0.alpha_plus) == 0.0);
    CHECK(std::abs(at0.alpha_minus) == 0.0);
    CHECK(at0.phi == 0.0);

    // theta_rot = g^2 t / 2 omega12 = pi
    const double t_pi = M_PI * 2.0 * p.omega12 / (p.g * p.g);
    const CatSnapshot at_pi = cat_state(t_pi, p);
    CHECK(std::abs(at_pi.alpha_plus - Complex(-0.6, 0.0)) < 1e-12);
    CHECK(std::abs(at_pi.alpha_minus - Complex(0.6, 0.0)) < 1e-12);
    CHECK(at_pi.phi ==
          doctest::Approx(p.omega23 * p.omega23 * t_pi / (2.0 * p.omega12)));

    // |alpha(t)| never exceeds the diameter 2 omega23 / g
    for (int i = 0; i <= 40; ++i) {
        const CatSnapshot s = cat_state(0.1 * i, p);
        CHECK(std::abs(s.alpha_plus) <= 2.0 * p.omega23 / p.g + 1e-12);
        CHECK(std::abs(s.alpha_minus) <= 2.0 * p.omega23 / p.g + 1e-12);
    }
}

TEST_CASE("coherent state embedding") {
    CHECK((coherent_embed(0.0, 6) -
           Vector::Unit(7, 0).cast<Complex>()).norm() < 1e-15);

    const Complex alpha(0.25, -0.17);
    const Vector v = coherent_embed(alpha, 10);
    // eigenvalue relation <alpha| a |alpha> = alpha
    Complex mean = 0.0;
    for (int n = 1; n <= 10; ++n)
        mean += std::conj(v(n - 1)) * std::sqrt(double(n)) * v(n);
    CHECK(std::abs(mean - alpha) < 1e-10);

    // overlap formula <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
    const Complex beta(-0.3, 0.1);
    const Vector w = coherent_embed(beta, 10);
    const Complex expected = std::exp(-0.5 * std::norm(alpha) -
                                      0.5 * std::norm(beta) +
                                      std::conj(alpha) * beta);
    CHECK(std::abs(v.dot(w) - expected) < 1e-10);

    CHECK_THROWS_AS(coherent_embed(Complex(3.0, 0.0), 4),
                    std::invalid_argument);
}

TEST_CASE("cat projection onto the bare atomic basis") {
    const SystemParams p = strong_params(50.0);
    const double t = 0.31 * 2.0 * p.omega12 / (p.g * p.g);
    const CatSnapshot snap = cat_state(t, p);
    const Vector full = cat_state_vector(t, p);
    CHECK(std::abs(full.norm() - 1.0) < 1e-12);

    const HilbertSpec spec = p.spec();
    const int nc = spec.cavity_dim();
    // projecting onto |1> leaves (e^{i chi}|a+> + e^{-i chi}|a->)/2 whose
    // norm^2 follows from the coherent overlap
    const double w1 = full.segment(0, nc).squaredNorm();
    const Complex ovl =
        std::exp(-0.5 * std::norm(snap.alpha_plus) -
                 0.5 * std::norm(snap.alpha_minus) +
                 std::conj(snap.alpha_plus) * snap.alpha_minus);
    const Vector cav_p = coherent_embed(snap.alpha_plus, spec.n_max);
    const Vector cav_m = coherent_embed(snap.alpha_minus, spec.n_max);
    const Complex chi_phase = cav_p.dot(cav_m);  // == ovl numerically
    CHECK(std::abs(chi_phase - ovl) < 1e-10);

    // w1 + w2 = 1 and w1 - w2 = Re(e^{-2i chi} <a+|a->)
    const double w2 = full.segment(nc, nc).squaredNorm();
    CHECK(w1 + w2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(full.segment(2 * nc, nc).norm()) == 0.0);
}

TEST_CASE("unitary evolution under the effective Hamiltonian matches the cat") {
    const SystemParams p = strong_params(50.0);
    const HilbertSpec spec = p.spec();
    const Matrix h = eff_hamiltonian_strong(p);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Vector psi0 = basis_ket(1, 0, spec);
    const Vector coeff = es.eigenvectors().adjoint() * psi0;

    for (int i = 1; i <= 16; ++i) {
        const double theta = 2.0 * M_PI * i / 16.0;
        const double t = theta * 2.0 * p.omega12 / (p.g * p.g);
        Vector psi = Vector::Zero(spec.dim());
        for (int k = 0; k < spec.dim(); ++k)
            psi += coeff(k) *
                   std::exp(Complex(0.0, -es.eigenvalues()(k) * t)) *
                   es.eigenvectors().col(k);
        const Vector cat = cat_state_vector(t, p);
        CHECK(std::norm(cat.dot(psi)) > 0.999);
    }
}

TEST_CASE("steady coherent amplitudes") {
    SUBCASE("reference modulus") {
        SystemParams p = strong_params(30.0);
        const SteadyAmplitudes b = steady_amplitudes(p);
        const double expected = 30.0 / std::sqrt(100.0 * 100.0 + 60.0 * 60.0);
        CHECK(std::abs(std::abs(b.beta_plus) - expected) < 1e-12);
        CHECK(std::abs(std::abs(b.beta_plus) - 0.25725) < 1e-5);
        CHECK(std::abs(b.beta_plus) ==
              doctest::Approx(std::abs(b.beta_minus)).epsilon(1e-14));
    }

    SUBCASE("cavity-dominated limit: opposite phases") {
        SystemParams p = strong_params(0.01);
        const SteadyAmplitudes b = steady_amplitudes(p);
        CHECK(std::abs(b.beta_plus - Complex(-0.3, 0.0)) < 1e-3);
        CHECK(std::abs(b.beta_minus - Complex(0.3, 0.0)) < 1e-3);
    }

    SUBCASE("drive-dominated limit: equal amplitude and phase") {
        SystemParams p;
        p.g = 1.0;
        p.omega23 = 3.0;
        p.omega12 = 500.0;
        p.n_max = 8;
        const SteadyAmplitudes b = steady_amplitudes(p);
        CHECK(std::abs(b.beta_plus - b.beta_minus) < 1e-5);
        CHECK(std::abs(std::abs(b.beta_plus) - 0.003) < 1e-5);
        // purely imaginary in this limit
        CHECK(std::abs(b.beta_plus.real()) < 1e-5);
    }

    SUBCASE("amplitude decreases with stronger driving") {
        double prev = 1e9;
        for (double w = 100.0; w <= 1000.0; w += 50.0) {
            const SteadyAmplitudes b = steady_amplitudes(strong_params(w));
            CHECK(std::abs(b.beta_plus) < prev);
            prev = std::abs(b.beta_plus);
        }
    }
}

TEST_CASE("analytic steady mixture") {
    SystemParams p;
    p.g = 1.0;
    p.omega23 = 3.0;
    p.omega12 = 2000.0;  // g^2 << 2 omega12 kappa
    p.n_max = 8;
    const Matrix rho = steady_mixture_cavity(p);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);

    // both branches coincide, so the mixture is (nearly) one coherent
    // state and g2 tends to 1
    double n1 = 0.0, n2 = 0.0;
    for (int m = 0; m <= p.n_max; ++m) {
        n1 += m * rho(m, m).real();
        n2 += double(m) * (m - 1) * rho(m, m).real();
    }
    CHECK(std::abs(n2 / (n1 * n1) - 1.0) < 1e-4);
}

TEST_CASE("cavity reduction and fidelity helpers") {
    const HilbertSpec spec{3};
    const Vector v =
        ((basis_ket(1, 0, spec) + basis_ket(2, 2, spec)) / std::sqrt(2.0))
            .eval();
    const Matrix reduced = reduce_cavity(v * v.adjoint(), spec);
    CHECK(reduced.rows() == spec.cavity_dim());
    CHECK(std::abs(reduced.trace().real() - 1.0) < 1e-14);
    CHECK(reduced(0, 0).real() == doctest::Approx(0.5));
    CHECK(reduced(2, 2).real() == doctest::Approx(0.5));
    CHECK(std::abs(reduced(0, 2)) < 1e-14);  // atom records the which-path

    const Vector a = coherent_embed(Complex(0.2, 0.0), 6);
    const Vector b = coherent_embed(Complex(-0.2, 0.1), 6);
    const Matrix ra = a * a.adjoint();
    const Matrix rb = b * b.adjoint();
    CHECK(uhlmann_fidelity(ra, ra) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(uhlmann_fidelity(ra, rb) ==
          doctest::Approx(std::norm(a.dot(b))).epsilon(1e-9));
}
