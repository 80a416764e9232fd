#pragma once

// Serial twins of the OpenMP kernels. They evaluate the same per-element
// functions in a plain loop and must agree with the parallel versions
// bit-for-bit; the tests and the benchmark compare the two.

#include "quadent/measurement.hpp"
#include "quadent/protocols.hpp"
#include "quadent/spectra.hpp"

#include <span>
#include <vector>

namespace quadent::reference {

std::vector<SpectrumRow> spectrum_sweep(const SourceSpectrumModel& model, const FrequencyGrid& grid);

std::vector<EfficacyRow> efficacy_grid(const EfficacyGridSpec& spec,
                                       std::span<const PhotonBudget> budgets);

CriteriaEstimate estimate_criteria(const CovarianceMatrix& cm, const EstimatorConfig& config);

std::vector<LossSweepRow> loss_sweep_experiment(const SqueezerSpec& source, double eta0,
                                                std::span<const double> losses,
                                                const EstimatorConfig& config);

}  // namespace quadent::reference
