#pragma once

#include <optional>

#include "core/hilbert.hpp"

namespace qlight {

// Wootters concurrence of rho projected onto the 2x2 subspace
// {|1>,|2>} (x) {|0>,|1>} and renormalized.  The projected trace is
// reported alongside; trust the value only when it is close to 1.
struct ConcurrenceResult {
    double value = 0.0;
    double projected_trace = 0.0;
};

struct ObservableSet {
    double n_photon = 0.0;
    double p33 = 0.0;
    std::optional<double> g2_zero;  // absent below the photon threshold
    std::optional<double> ratio;    // absent when <s33> vanishes
    double concurrence = 0.0;
    double concurrence_trace = 0.0;
};

double photon_number(const Matrix& rho, const HilbertSpec& spec);
double excited_population(const Matrix& rho, const HilbertSpec& spec);

// <a†² a²> / <a†a>²; absent when <a†a> <= 1e-12.
std::optional<double> g2_zero(const Matrix& rho, const HilbertSpec& spec);

// <a†a> / <s33>; absent when <s33> <= 1e-14.
std::optional<double> photon_ratio(const Matrix& rho, const HilbertSpec& spec);

// Complex conjugation in the Wootters formula is taken in the fixed
// product basis {|1>,|2>} (x) {|0>,|1>}.
ConcurrenceResult concurrence_2x2(const Matrix& rho, const HilbertSpec& spec);

ObservableSet evaluate_observables(const Matrix& rho, const HilbertSpec& spec);

}  // namespace qlight
