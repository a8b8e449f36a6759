#include "qlight/qlight.h"

#include <cmath>
#include <new>
#include <vector>

#include "core/darkstates.hpp"
#include "core/model.hpp"
#include "core/observables.hpp"
#include "core/solvers.hpp"
#include "core/strongdrive.hpp"

struct qlight_state {
    qlight::HilbertSpec spec;
    qlight::Matrix rho;
};

namespace {

qlight::SystemParams to_params(const qlight_params& p) {
    qlight::SystemParams out;
    out.g = p.g;
    out.omega12 = p.omega12;
    out.omega23 = p.omega23;
    out.delta12 = p.delta12;
    out.delta23 = p.delta23;
    if (!std::isnan(p.delta)) out.delta = p.delta;
    out.kappa = p.kappa;
    out.gamma31 = p.gamma31;
    out.gamma32 = p.gamma32;
    out.n_max = p.n_max;
    return out;
}

// Resolves n_max = 0 to the automatic truncation.
qlight::SystemParams resolve(const qlight_params& p) {
    qlight::SystemParams out = to_params(p);
    if (p.n_max == 0) {
        out.n_max = 8;  // validate() placeholder
        out.n_max = qlight::auto_truncate(out);
    }
    return out;
}

template <typename Fn>
qlight_status guarded(Fn&& fn) {
    try {
        fn();
        return QLIGHT_OK;
    } catch (const qlight::DegenerateSteadyState&) {
        return QLIGHT_ERR_DEGENERATE_STEADY_STATE;
    } catch (const qlight::StiffnessFailure&) {
        return QLIGHT_ERR_STIFFNESS;
    } catch (const qlight::TruncationError&) {
        return QLIGHT_ERR_TRUNCATION;
    } catch (const qlight::InvariantViolation&) {
        return QLIGHT_ERR_INVARIANT;
    } catch (const std::invalid_argument&) {
        return QLIGHT_ERR_INVALID_ARGUMENT;
    } catch (const std::out_of_range&) {
        return QLIGHT_ERR_INVALID_ARGUMENT;
    } catch (...) {
        return QLIGHT_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* qlight_strerror(qlight_status status) {
    switch (status) {
        case QLIGHT_OK: return "ok";
        case QLIGHT_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QLIGHT_ERR_DEGENERATE_STEADY_STATE:
            return "steady state is not unique";
        case QLIGHT_ERR_STIFFNESS: return "integrator step-size underflow";
        case QLIGHT_ERR_TRUNCATION: return "automatic truncation cap exceeded";
        case QLIGHT_ERR_INVARIANT: return "density-matrix invariant violated";
        case QLIGHT_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

qlight_params qlight_params_default(void) {
    qlight_params p{};
    p.delta = std::nan("");
    p.kappa = 1.0;
    p.n_max = 0;
    return p;
}

qlight_status qlight_resolve_n_max(const qlight_params* p, int* n_max_out) {
    if (!p || !n_max_out) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const qlight::SystemParams sp = resolve(*p);
        *n_max_out = sp.n_max;
    });
}

void qlight_state_free(qlight_state* state) { delete state; }

int qlight_state_n_max(const qlight_state* state) {
    return state ? state->spec.n_max : -1;
}

qlight_status qlight_basis_state(const qlight_params* p, int level,
                                 int photons, qlight_state** out) {
    if (!p || !out) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const qlight::SystemParams sp = resolve(*p);
        const qlight::Vector v =
            qlight::basis_ket(level, photons, sp.spec());
        *out = new qlight_state{sp.spec(), v * v.adjoint()};
    });
}

qlight_status qlight_steady_state(const qlight_params* p,
                                  qlight_state** out) {
    if (!p || !out) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const qlight::SystemParams sp = resolve(*p);
        *out = new qlight_state{sp.spec(), qlight::steady_state(sp)};
    });
}

qlight_status qlight_evolve(const qlight_params* p,
                            const qlight_state* initial, double t0,
                            double t1, int n_steps, qlight_state** out) {
    if (!p || !initial || !out) return QLIGHT_ERR_INVALID_ARGUMENT;
    if (p->n_max != 0 && p->n_max != initial->spec.n_max)
        return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        qlight::SystemParams sp = to_params(*p);
        sp.n_max = initial->spec.n_max;
        const std::vector<qlight::Matrix> states =
            qlight::evolve(sp, initial->rho, {t0, t1, n_steps});
        for (size_t i = 0; i < states.size(); ++i)
            out[i] = new qlight_state{sp.spec(), states[i]};
    });
}

qlight_status qlight_observe(const qlight_state* state,
                             qlight_observables* out) {
    if (!state || !out) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const qlight::ObservableSet obs =
            qlight::evaluate_observables(state->rho, state->spec);
        out->n_photon = obs.n_photon;
        out->p33 = obs.p33;
        out->g2_defined = obs.g2_zero.has_value();
        out->g2_zero = obs.g2_zero.value_or(0.0);
        out->ratio_defined = obs.ratio.has_value();
        out->ratio = obs.ratio.value_or(0.0);
        out->concurrence = obs.concurrence;
        out->concurrence_trace = obs.concurrence_trace;
    });
}

qlight_status qlight_dark_populations(const qlight_state* state,
                                      const qlight_params* p, int n_upto,
                                      double* out) {
    if (!state || !p || !out || n_upto < 0)
        return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        qlight::SystemParams sp = to_params(*p);
        sp.n_max = state->spec.n_max;
        const std::vector<double> pops =
            qlight::dark_populations(state->rho, sp, n_upto);
        for (size_t i = 0; i < pops.size(); ++i) out[i] = pops[i];
    });
}

qlight_status qlight_dark_report(const qlight_params* p, int n,
                                 qlight_dark_row* out) {
    if (!p || !out || n < 0) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const qlight::SystemParams sp = to_params(*p);
        qlight_dark_row row{};
        if (n == 0) {
            row.q = 1.0;
        } else {
            const auto [q, r] = qlight::qn_rn(n, sp.g, sp.omega23);
            row.q = q;
            row.r = r;
            row.decay = qlight::dark_decay_rate(n, sp);
            const auto [ep, em] = qlight::bright_energies(n, sp);
            row.e_plus = ep;
            row.e_minus = em;
        }
        const auto [q1, r1] = qlight::qn_rn(n + 1, sp.g, sp.omega23);
        (void)q1;
        row.coupling_next = -sp.omega12 * row.q * r1;
        *out = row;
    });
}

qlight_status qlight_cat_state(const qlight_params* p, double t,
                               qlight_cat* out) {
    if (!p || !out) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        qlight::SystemParams sp = to_params(*p);
        if (sp.n_max == 0) sp.n_max = 1;  // snapshot needs no space
        const qlight::CatSnapshot snap = qlight::cat_state(t, sp);
        out->t = snap.t;
        out->phi = snap.phi;
        out->alpha_plus_re = snap.alpha_plus.real();
        out->alpha_plus_im = snap.alpha_plus.imag();
        out->alpha_minus_re = snap.alpha_minus.real();
        out->alpha_minus_im = snap.alpha_minus.imag();
    });
}

qlight_status qlight_cat_fidelity(const qlight_params* p,
                                  const qlight_state* state, double t,
                                  int in_drive_frame, double* out) {
    if (!p || !state || !out) return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        qlight::SystemParams sp = to_params(*p);
        sp.n_max = state->spec.n_max;
        const qlight::Vector cat =
            qlight::cat_state_vector(t, sp, in_drive_frame != 0);
        // Pure target: F = <cat| rho |cat>.
        *out = std::real(cat.dot(state->rho * cat));
    });
}

qlight_status qlight_steady_amplitudes(const qlight_params* p,
                                       double* beta_plus_re,
                                       double* beta_plus_im,
                                       double* beta_minus_re,
                                       double* beta_minus_im) {
    if (!p || !beta_plus_re || !beta_plus_im || !beta_minus_re ||
        !beta_minus_im)
        return QLIGHT_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        qlight::SystemParams sp = to_params(*p);
        if (sp.n_max == 0) sp.n_max = 1;
        const qlight::SteadyAmplitudes b = qlight::steady_amplitudes(sp);
        *beta_plus_re = b.beta_plus.real();
        *beta_plus_im = b.beta_plus.imag();
        *beta_minus_re = b.beta_minus.real();
        *beta_minus_im = b.beta_minus.imag();
    });
}

}  // extern "C"
