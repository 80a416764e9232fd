#pragma once

/**
 * @file
 * Monte-Carlo emulation of the homodyne measurement chain.
 *
 * One trace is two blocks of `points_per_trace` samples: one with both
 * homodynes locked to the amplitude quadrature and one with both locked to
 * the phase quadrature. Each detector adds independent darknoise of variance
 * `darknoise_rel` (shot-noise units). Both criteria are estimated from the
 * same acquired traces.
 *
 * Inseparability: unity-gain sum and difference photocurrents, variance
 * normalized to the two-beam shot noise (divide by 2), minimum of the two,
 * darknoise subtracted (corrected = raw - dark).
 *
 * EPR: gain-optimized photocurrent x - g y, single-beam normalization. The
 * moments carry a (n-1)/(n-2) factor for the fitted gain. The darknoise of
 * the combination, dark (1 + g^2), is subtracted. `unbiased` uses the gain
 * that minimizes the corrected variance. `dark_biased` takes the gain from
 * the raw, dark-inclusive moments, which is never better.
 */

#include "quadent/gaussian.hpp"
#include "quadent/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace quadent {

enum class GainMode { unbiased, dark_biased };

struct EstimatorConfig {
    int traces{10};
    int points_per_trace{400};
    std::uint64_t seed{42};
    double darknoise_rel{0.1};
    GainMode gain_mode{GainMode::unbiased};

    void validate() const;
};

/// Per-trace values after darknoise correction, and before it.
struct TraceEstimate {
    double plus;
    double minus;
    double product;
    double raw_plus;
    double raw_minus;
};

struct EstimateResult {
    double value;
    double std_error;  ///< NaN when only one trace is available
    double raw_value;
    double mean_plus;   ///< corrected amplitude-quadrature value, averaged over traces
    double mean_minus;
    std::vector<TraceEstimate> traces;
};

struct CriteriaEstimate {
    EstimateResult duan;
    EstimateResult epr;
};

/// Draws zero-mean 4-vectors with covariance cm through its Cholesky factor.
class QuadratureSampler {
public:
    /// Throws std::invalid_argument if cm is not positive definite.
    explicit QuadratureSampler(const CovarianceMatrix& cm);

    [[nodiscard]] Eigen::Vector4d draw(NormalStream& normals) const;

private:
    Eigen::Matrix4d factor_;
};

std::vector<Eigen::Vector4d> sample_quadratures(const CovarianceMatrix& cm, std::size_t n,
                                                std::uint64_t seed);

/// Photocurrents of the two homodynes for one lock setting.
struct LockRecord {
    std::vector<double> x;
    std::vector<double> y;
};

struct TraceRecord {
    LockRecord amplitude;
    LockRecord phase;
};

/// Deterministic in (config.seed, trace).
TraceRecord acquire_trace(const QuadratureSampler& sampler, const EstimatorConfig& config,
                          int trace);

/// Per-lock estimators, exposed for testing. Both return the raw
/// (dark-inclusive) variance; `gain_out` receives the gain used.
double duan_lock_variance(const LockRecord& lock);
double epr_lock_variance(const LockRecord& lock, double darknoise, GainMode mode,
                         double* gain_out = nullptr);

/// Both criteria from one acquisition; traces run in parallel.
CriteriaEstimate estimate_criteria(const CovarianceMatrix& cm, const EstimatorConfig& config);

EstimateResult estimate_duan(const CovarianceMatrix& cm, const EstimatorConfig& config);
EstimateResult estimate_epr(const CovarianceMatrix& cm, const EstimatorConfig& config);

struct LossSweepRow {
    double loss;
    double total_efficiency;
    EstimateResult epr;
    EstimateResult duan;
    double epr_analytic;
    double duan_analytic;
};

/// Symmetric loss added behind two identical sources. Efficiency is
/// eta0 * (1 - loss), so eta0 = 1 reads `loss` as the total loss.
std::vector<LossSweepRow> loss_sweep_experiment(const SqueezerSpec& source, double eta0,
                                                std::span<const double> losses,
                                                const EstimatorConfig& config);

namespace detail {

/// Aggregates per-trace values; `root` selects sqrt(mean+ mean-) (Duan)
/// over mean+ mean- (EPR).
EstimateResult aggregate(std::vector<TraceEstimate> traces, bool root);

/// Single-trace estimates for both criteria.
struct TracePair {
    TraceEstimate duan;
    TraceEstimate epr;
};
TracePair estimate_trace(const QuadratureSampler& sampler, const EstimatorConfig& config,
                         int trace);

}  // namespace detail

}  // namespace quadent
