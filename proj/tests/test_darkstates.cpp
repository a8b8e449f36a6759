#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/darkstates.hpp"
#include "core/model.hpp"

using namespace qlight;

namespace {

SystemParams reference_params() {
    SystemParams p;
    p.g = 10.0;
    p.omega23 = 3.0;
    p.omega12 = 0.1;
    p.n_max = 8;
    return p;
}

}  // namespace

TEST_CASE("closed-form Q_n, R_n") {
    const auto [q1, r1] = qn_rn(1, 10.0, 3.0);
    CHECK(q1 == doctest::Approx(3.0 / std::sqrt(109.0)).epsilon(1e-14));
    CHECK(r1 == doctest::Approx(10.0 / std::sqrt(109.0)).epsilon(1e-14));

    // g -> 0: the dark state collapses onto |1,n>
    const auto [q0, r0] = qn_rn(3, 1e-8, 3.0);
    CHECK(q0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r0 < 1e-8);

    for (int n = 1; n <= 10; ++n) {
        const auto [q, r] = qn_rn(n, 10.0, 3.0);
        CHECK(q * q + r * r == doctest::Approx(1.0).epsilon(1e-13));
    }

    CHECK_THROWS_AS(qn_rn(1, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("dark state vectors") {
    const SystemParams p = reference_params();
    const HilbertSpec spec = p.spec();

    CHECK((dark_state(0, p).vec - basis_ket(1, 0, spec)).norm() == 0.0);

    const DarkStateVector d1 = dark_state(1, p);
    CHECK(std::abs(d1.vec.dot(basis_ket(1, 1, spec)).real() - 0.2873) < 1e-4);
    CHECK(std::abs(d1.vec.dot(basis_ket(2, 0, spec)).real() + 0.9578) < 1e-4);

    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m)
            CHECK(std::abs(dark_state(n, p).vec.dot(dark_state(m, p).vec) -
                           (n == m ? 1.0 : 0.0)) < 1e-13);

    // no excited-level component
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= spec.n_max; ++m)
            CHECK(dark_state(n, p).vec.dot(basis_ket(3, m, spec)) ==
                  Complex(0.0));

    CHECK_THROWS_AS(dark_state(9, p), std::out_of_range);
}

TEST_CASE("H0 annihilates the ladder below the truncation edge") {
    const SystemParams p = reference_params();
    const Matrix h0 = hamiltonian_h0(p);
    for (int n = 0; n <= p.n_max - 1; ++n)
        CHECK((h0 * dark_state(n, p).vec).norm() < 1e-12);
}

TEST_CASE("weak-regime effective Hamiltonian") {
    const SystemParams p = reference_params();
    const Matrix h = eff_hamiltonian_weak(p);

    SUBCASE("first ladder link") {
        const DarkStateVector d0 = dark_state(0, p);
        const DarkStateVector d1 = dark_state(1, p);
        const double elem = d1.vec.dot(h * d0.vec).real();
        CHECK(elem ==
              doctest::Approx(-0.1 * 10.0 / std::sqrt(109.0)).epsilon(1e-12));
        CHECK(std::abs(elem + 0.09578) < 1e-4);
    }

    SUBCASE("links match the bare drive V between dark states") {
        const Matrix v = hamiltonian_v(p);
        for (int n = 0; n <= p.n_max - 1; ++n) {
            const Vector lo = dark_state(n, p).vec;
            const Vector hi = dark_state(n + 1, p).vec;
            const Complex expected = hi.dot(v * lo);
            CHECK(std::abs(hi.dot(h * lo) - expected) < 1e-12);
            const double closed =
                -p.omega12 * dark_state(n, p).q * dark_state(n + 1, p).r;
            CHECK(std::abs(expected - closed) < 1e-12);
        }
    }

    SUBCASE("large-g limit of the couplings") {
        SystemParams big = reference_params();
        big.g = 100.0;
        big.omega23 = 1.0;
        const Matrix hb = eff_hamiltonian_weak(big);
        for (int n = 1; n <= 5; ++n) {
            const double elem = dark_state(n + 1, big)
                                    .vec.dot(hb * dark_state(n, big).vec)
                                    .real();
            const double limit =
                -big.omega12 * big.omega23 / (big.g * std::sqrt(double(n)));
            CHECK(std::abs(elem / limit - 1.0) < 0.01);
        }
    }

    SUBCASE("annihilates the orthogonal complement") {
        const HilbertSpec spec = p.spec();
        for (int m = 0; m <= spec.n_max; ++m)
            CHECK((h * basis_ket(3, m, spec)).norm() < 1e-13);
        // bright combination Q|2,n-1> + R|1,n> is orthogonal to every dark state
        const DarkStateVector d1 = dark_state(1, p);
        const Vector bright =
            d1.r * basis_ket(1, 1, spec) + d1.q * basis_ket(2, 0, spec);
        CHECK((h * bright).norm() < 1e-13);
    }
}

TEST_CASE("dark-state decay rates") {
    SystemParams p = reference_params();

    CHECK(dark_decay_rate(1, p) ==
          doctest::Approx(9.0 / 109.0).epsilon(1e-13));
    CHECK(dark_decay_rate(2, p) ==
          doctest::Approx(2.0 * 109.0 / 209.0).epsilon(1e-13));

    SUBCASE("matches the explicit matrix element") {
        const Matrix a = annihilation(p.spec());
        for (int n = 1; n <= 6; ++n) {
            const Complex elem = dark_state(n - 1, p)
                                     .vec.dot(std::sqrt(p.kappa) * a *
                                              dark_state(n, p).vec);
            CHECK(std::abs(std::norm(elem) - dark_decay_rate(n, p)) < 1e-12);
        }
    }

    SUBCASE("vanishing control drive closes the decay channel at n=1") {
        SystemParams q = p;
        q.omega23 = 0.0;
        CHECK(dark_decay_rate(1, q) == 0.0);
    }

    SUBCASE("monotonic in n") {
        for (int n = 1; n < 10; ++n)
            CHECK(dark_decay_rate(n + 1, p) > dark_decay_rate(n, p));
    }
}

TEST_CASE("bright-state energies") {
    const SystemParams p = reference_params();
    const auto [ep, em] = bright_energies(1, p);
    CHECK(ep == doctest::Approx(std::sqrt(109.0)).epsilon(1e-14));
    CHECK(em == -ep);

    SystemParams bare = p;
    bare.g = 0.0;
    bare.omega23 = 0.0;
    const auto [zp, zm] = bright_energies(2, bare);
    CHECK(zp == 0.0);
    CHECK(zm == 0.0);

    SUBCASE("present in the H0 spectrum") {
        SystemParams res = p;
        res.n_max = 10;
        Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian_h0(res));
        for (int n = 1; n <= 4; ++n) {
            const auto [eplus, eminus] = bright_energies(n, res);
            for (const double target : {eplus, eminus}) {
                double best = 1e9;
                for (int i = 0; i < es.eigenvalues().size(); ++i)
                    best = std::min(best,
                                    std::abs(es.eigenvalues()(i) - target));
                CHECK(best < 1e-10);
            }
        }
    }
}

TEST_CASE("cavity decay stays inside the dark ladder") {
    const SystemParams p = reference_params();
    const Matrix a = annihilation(p.spec());
    for (int n = 1; n <= 6; ++n) {
        const Vector lowered = a * dark_state(n, p).vec;
        const Vector target = dark_state(n - 1, p).vec;
        const Vector leak = lowered - target.dot(lowered) * target;
        CHECK(leak.norm() < 1e-12);
    }
}

TEST_CASE("dark populations of simple states") {
    const SystemParams p = reference_params();
    const Vector v = basis_ket(1, 0, p.spec());
    const auto pops = dark_populations(v * v.adjoint(), p, 4);
    REQUIRE(pops.size() == 5);
    CHECK(pops[0] == doctest::Approx(1.0));
    for (size_t n = 1; n < pops.size(); ++n) CHECK(pops[n] < 1e-15);
    CHECK_THROWS_AS(dark_populations(v * v.adjoint(), p, 9),
                    std::out_of_range);
}
