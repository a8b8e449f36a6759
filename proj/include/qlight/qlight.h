/* Public C interface of the qlight cavity-QED wave-mixing library.
 *
 * The library simulates a three-level atom coupled to a cavity mode and
 * two classical drives.  All rates are in units of the cavity-field
 * decay rate kappa; times are in units 1/kappa.  Density-matrix results
 * are returned through opaque qlight_state handles; every function
 * returns a qlight_status, with QLIGHT_OK == 0 on success.
 *
 * Handles are immutable once created and safe to share across threads;
 * each solve runs independently.
 */
#ifndef QLIGHT_H
#define QLIGHT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qlight_status {
    QLIGHT_OK = 0,
    QLIGHT_ERR_INVALID_ARGUMENT = 1,
    QLIGHT_ERR_DEGENERATE_STEADY_STATE = 2,
    QLIGHT_ERR_STIFFNESS = 3,
    QLIGHT_ERR_TRUNCATION = 4,
    QLIGHT_ERR_INVARIANT = 5,
    QLIGHT_ERR_INTERNAL = 6
} qlight_status;

/* Human-readable description of a status code. */
const char* qlight_strerror(qlight_status status);

typedef struct qlight_params {
    double g;        /* atom-cavity coupling */
    double omega12;  /* ground-state drive, half Rabi frequency */
    double omega23;  /* control drive, half Rabi frequency */
    double delta12;  /* detuning of the ground-state drive */
    double delta23;  /* detuning of the control drive */
    double delta;    /* cavity detuning; NaN selects delta12 + delta23 */
    double kappa;    /* cavity field decay rate (1 in internal units) */
    double gamma31;  /* polarization decay |3> -> |1> */
    double gamma32;  /* polarization decay |3> -> |2> */
    int n_max;       /* Fock truncation; 0 selects automatic truncation */
} qlight_params;

/* All couplings zero, kappa = 1, delta = auto, n_max = auto. */
qlight_params qlight_params_default(void);

/* Truncation the automatic procedure would pick (steady-state tail below
 * 1e-8, probing n_max = 8, 12, ..., 40). */
qlight_status qlight_resolve_n_max(const qlight_params* p, int* n_max_out);

/* Opaque density matrix on the truncated atom (x) cavity space. */
typedef struct qlight_state qlight_state;

void qlight_state_free(qlight_state* state);
int qlight_state_n_max(const qlight_state* state);

/* Pure state |level, photons><level, photons|; level in {1,2,3}. */
qlight_status qlight_basis_state(const qlight_params* p, int level,
                                 int photons, qlight_state** out);

/* Unique steady state of the master equation.  Reports
 * QLIGHT_ERR_DEGENERATE_STEADY_STATE when the fixed-point space has
 * dimension > 1 (e.g. both drives off). */
qlight_status qlight_steady_state(const qlight_params* p,
                                  qlight_state** out);

/* Integrates the master equation from `initial` over [t0, t1] and fills
 * `out` with n_steps + 1 states including the endpoints.  The caller
 * owns every returned handle. */
qlight_status qlight_evolve(const qlight_params* p,
                            const qlight_state* initial, double t0,
                            double t1, int n_steps, qlight_state** out);

typedef struct qlight_observables {
    double n_photon;          /* <a†a> */
    double p33;               /* <s33> */
    double g2_zero;           /* <a†²a²>/<a†a>²; valid iff g2_defined */
    int g2_defined;
    double ratio;             /* <a†a>/<s33>; valid iff ratio_defined */
    int ratio_defined;
    double concurrence;       /* Wootters C on {|1>,|2>} (x) {|0>,|1>} */
    double concurrence_trace; /* population of that subspace */
} qlight_observables;

qlight_status qlight_observe(const qlight_state* state,
                             qlight_observables* out);

/* P_n = <Psi_n| rho |Psi_n> for n = 0..n_upto (needs n_upto+1 slots). */
qlight_status qlight_dark_populations(const qlight_state* state,
                                      const qlight_params* p, int n_upto,
                                      double* out);

/* Closed-form dark-state ladder data for one rung. */
typedef struct qlight_dark_row {
    double q;             /* Q_n (1 for n = 0) */
    double r;             /* R_n (0 for n = 0) */
    double decay;         /* Gamma_n (0 for n = 0) */
    double e_plus;        /* bright energy +sqrt(n g^2 + O23^2), 0 for n=0 */
    double e_minus;
    double coupling_next; /* -O12 Q_n R_{n+1}, 0 on the top rung */
} qlight_dark_row;

qlight_status qlight_dark_report(const qlight_params* p, int n,
                                 qlight_dark_row* out);

/* Strong-drive analytics. */
typedef struct qlight_cat {
    double t;
    double phi;            /* O23^2 t / 2 O12 */
    double alpha_plus_re, alpha_plus_im;
    double alpha_minus_re, alpha_minus_im;
} qlight_cat;

qlight_status qlight_cat_state(const qlight_params* p, double t,
                               qlight_cat* out);

/* Uhlmann fidelity of `state` with the analytic cat state at time t.
 * Set in_drive_frame when `state` was evolved under the full Hamiltonian
 * (as opposed to the strong-drive effective one). */
qlight_status qlight_cat_fidelity(const qlight_params* p,
                                  const qlight_state* state, double t,
                                  int in_drive_frame, double* out);

/* Steady coherent amplitudes beta_+- of the strong-drive regime. */
qlight_status qlight_steady_amplitudes(const qlight_params* p,
                                       double* beta_plus_re,
                                       double* beta_plus_im,
                                       double* beta_minus_re,
                                       double* beta_minus_im);

#ifdef __cplusplus
}
#endif

#endif /* QLIGHT_H */
