#pragma once

// Frequency-resolved source model: an OPA squeezing spectrum with a
// Lorentzian roll-off, plus laser relaxation-oscillation noise on the
// amplitude quadrature of the entangled beams. Each sideband frequency is an
// independent two-mode Gaussian state.

#include "quadent/criteria.hpp"
#include "quadent/gaussian.hpp"

#include <vector>

namespace quadent {

/// Illustrative defaults only; none of these are measured values.
struct SourceSpectrumModel {
    double s0{0.28};            ///< zero-frequency squeezed variance
    double f_opa{15e6};         ///< OPA half-width, Hz
    double relax_amp{3.0};      ///< peak amplitude-quadrature excess, shot-noise units
    double f_relax{1e6};        ///< relaxation-oscillation centre, Hz
    double relax_width{1e6};    ///< Lorentzian half-width, Hz
    double eta{0.85};

    void validate() const;
};

struct FrequencyGrid {
    double f_start{2.5e6};
    double f_stop{10e6};
    int points{76};

    void validate() const;
    [[nodiscard]] double at(int i) const;
};

struct SpectrumRow {
    double freq_hz;
    double v_plus;
    double v_minus;
    double duan_product;
    double n_min;
    double n_excess;
    double n_total;
};

/// s(f) = 1 - (1 - s0) / (1 + (f / f_opa)^2).
double squeezed_variance_at(const SourceSpectrumModel& model, double f);

/// Pure source at sideband f: (s(f), 1/s(f)).
SqueezerSpec source_at(const SourceSpectrumModel& model, double f);

/// relax_amp / (1 + ((f - f_relax) / relax_width)^2).
double relaxation_excess(const SourceSpectrumModel& model, double f);

/// Full circuit at one sideband: two sources at pi/2 on the beamsplitter,
/// relaxation noise on each beam's amplitude quadrature, then loss eta.
CovarianceMatrix state_at(const SourceSpectrumModel& model, double f);

SpectrumRow spectrum_row(const SourceSpectrumModel& model, double f);

/// Rows in frequency order; evaluated in parallel.
std::vector<SpectrumRow> spectrum_sweep(const SourceSpectrumModel& model, const FrequencyGrid& grid);

}  // namespace quadent
