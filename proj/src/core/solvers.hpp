#pragma once

#include <stdexcept>
#include <vector>

#include "core/model.hpp"

namespace qlight {

struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    int n_steps = 1;  // number of output intervals; returns n_steps+1 states

    void validate() const {
        if (!(t1 > t0)) throw std::invalid_argument("TimeGrid: t1 must exceed t0");
        if (n_steps < 1) throw std::invalid_argument("TimeGrid: n_steps >= 1");
    }
};

// The fixed-point space of the generator has dimension > 1; no unique
// steady state exists (e.g. both drives switched off).
struct DegenerateSteadyState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive step-size control hit the minimum step.
struct StiffnessFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// auto_truncate exceeded its n_max cap.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Returned density matrix failed its invariants (trace / Hermiticity /
// positivity drift); the solver reports instead of renormalizing.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unique trace-one solution of L rho = 0 with residual
// ||L vec(rho)||_2 < 1e-10 ||L||_F.  Throws DegenerateSteadyState when the
// null space has dimension > 1.
Matrix steady_state(const SparseMatrix& liouvillian);
Matrix steady_state(const Matrix& liouvillian);
Matrix steady_state(const SystemParams& p);

// Integrates rho' = L rho with an adaptive Dormand-Prince 5(4) pair
// (relative local error 1e-10 per step) and returns the states on the
// output grid, rho(t0) first.
std::vector<Matrix> evolve(const SystemParams& p, const Matrix& rho0,
                           const TimeGrid& grid);

// Smallest n_max (8, 12, ..., 40) whose steady state keeps the top two
// Fock levels below 1e-8 population.
int auto_truncate(SystemParams p);

}  // namespace qlight
