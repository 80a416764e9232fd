#include "quadent/measurement.hpp"

#include "quadent/criteria.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quadent {

namespace {

struct Moments {
    double xx;
    double yy;
    double xy;
};

// Sample moments about the sample mean, divisor n - 1.
Moments sample_moments(const LockRecord& lock) {
    const auto n = lock.x.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double mx = std::accumulate(lock.x.begin(), lock.x.end(), 0.0) * inv_n;
    const double my = std::accumulate(lock.y.begin(), lock.y.end(), 0.0) * inv_n;
    Moments m{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = lock.x[k] - mx;
        const double dy = lock.y[k] - my;
        m.xx += dx * dx;
        m.yy += dy * dy;
        m.xy += dx * dy;
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    return {m.xx * inv, m.yy * inv, m.xy * inv};
}

LockRecord acquire_lock(const QuadratureSampler& sampler, const EstimatorConfig& config,
                        int trace, Quadrature q) {
    const int lock = q == Quadrature::amplitude ? 0 : 1;
    NormalStream normals(substream_seed(config.seed, static_cast<std::uint64_t>(trace),
                                        static_cast<std::uint64_t>(lock)));
    const int ix = CovarianceMatrix::index(Beam::x, q);
    const int iy = CovarianceMatrix::index(Beam::y, q);
    const double dark_sd = std::sqrt(config.darknoise_rel);
    const auto n = static_cast<std::size_t>(config.points_per_trace);
    LockRecord rec{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector4d v = sampler.draw(normals);
        const double dark_x = dark_sd * normals();
        const double dark_y = dark_sd * normals();
        rec.x[k] = v(ix) + dark_x;
        rec.y[k] = v(iy) + dark_y;
    }
    return rec;
}

double sample_sd(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void EstimatorConfig::validate() const {
    if (traces < 1) {
        throw std::invalid_argument("estimator traces must be at least 1");
    }
    if (points_per_trace < 2) {
        throw std::invalid_argument("estimator points_per_trace must be at least 2");
    }
    if (!(darknoise_rel >= 0.0) || !std::isfinite(darknoise_rel)) {
        throw std::invalid_argument("estimator darknoise_rel must be non-negative");
    }
}

QuadratureSampler::QuadratureSampler(const CovarianceMatrix& cm) {
    const Eigen::LLT<Eigen::Matrix4d> llt(cm.matrix());
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("covariance matrix is not positive definite; cannot sample");
    }
    factor_ = llt.matrixL();
}

Eigen::Vector4d QuadratureSampler::draw(NormalStream& normals) const {
    Eigen::Vector4d z;
    for (int i = 0; i < 4; ++i) {
        z(i) = normals();
    }
    return factor_ * z;
}

std::vector<Eigen::Vector4d> sample_quadratures(const CovarianceMatrix& cm, std::size_t n,
                                                std::uint64_t seed) {
    const QuadratureSampler sampler(cm);
    NormalStream normals(substream_seed(seed, 0, 0));
    std::vector<Eigen::Vector4d> out(n);
    for (auto& v : out) {
        v = sampler.draw(normals);
    }
    return out;
}

TraceRecord acquire_trace(const QuadratureSampler& sampler, const EstimatorConfig& config,
                          int trace) {
    return {acquire_lock(sampler, config, trace, Quadrature::amplitude),
            acquire_lock(sampler, config, trace, Quadrature::phase)};
}

double duan_lock_variance(const LockRecord& lock) {
    const Moments m = sample_moments(lock);
    const double sum = m.xx + m.yy + 2.0 * m.xy;
    const double diff = m.xx + m.yy - 2.0 * m.xy;
    return std::min(sum, diff) / 2.0;
}

double epr_lock_variance(const LockRecord& lock, double darknoise, GainMode mode,
                         double* gain_out) {
    const Moments m = sample_moments(lock);
    const auto n = static_cast<double>(lock.x.size());
    const double dof = n > 2.0 ? (n - 1.0) / (n - 2.0) : 1.0;
    double gain = 0.0;
    if (mode == GainMode::unbiased) {
        const double conditioner = dof * m.yy - darknoise;
        gain = conditioner > 0.0 ? dof * m.xy / conditioner : 0.0;
    } else {
        gain = m.yy > 0.0 ? m.xy / m.yy : 0.0;
    }
    if (gain_out != nullptr) {
        *gain_out = gain;
    }
    return dof * (m.xx - 2.0 * gain * m.xy + gain * gain * m.yy);
}

namespace detail {

TracePair estimate_trace(const QuadratureSampler& sampler, const EstimatorConfig& config,
                         int trace) {
    const TraceRecord rec = acquire_trace(sampler, config, trace);
    const double dark = config.darknoise_rel;

    const double duan_raw_p = duan_lock_variance(rec.amplitude);
    const double duan_raw_m = duan_lock_variance(rec.phase);
    const double duan_p = duan_raw_p - dark;
    const double duan_m = duan_raw_m - dark;

    double g_p = 0.0;
    double g_m = 0.0;
    const double epr_raw_p = epr_lock_variance(rec.amplitude, dark, config.gain_mode, &g_p);
    const double epr_raw_m = epr_lock_variance(rec.phase, dark, config.gain_mode, &g_m);
    const double epr_p = epr_raw_p - dark * (1.0 + g_p * g_p);
    const double epr_m = epr_raw_m - dark * (1.0 + g_m * g_m);

    return {{duan_p, duan_m, std::sqrt(duan_p * duan_m), duan_raw_p, duan_raw_m},
            {epr_p, epr_m, epr_p * epr_m, epr_raw_p, epr_raw_m}};
}

EstimateResult aggregate(std::vector<TraceEstimate> traces, bool root) {
    const auto t = static_cast<double>(traces.size());
    double p = 0.0;
    double m = 0.0;
    double rp = 0.0;
    double rm = 0.0;
    std::vector<double> products;
    products.reserve(traces.size());
    for (const auto& tr : traces) {
        p += tr.plus;
        m += tr.minus;
        rp += tr.raw_plus;
        rm += tr.raw_minus;
        products.push_back(tr.product);
    }
    p /= t;
    m /= t;
    rp /= t;
    rm /= t;
    const auto combine = [root](double a, double b) { return root ? std::sqrt(a * b) : a * b; };
    const double se = traces.size() > 1 ? sample_sd(products) / std::sqrt(t)
                                        : std::numeric_limits<double>::quiet_NaN();
    return {combine(p, m), se, combine(rp, rm), p, m, std::move(traces)};
}

}  // namespace detail

CriteriaEstimate estimate_criteria(const CovarianceMatrix& cm, const EstimatorConfig& config) {
    config.validate();
    const QuadratureSampler sampler(cm);
    const auto n = static_cast<std::size_t>(config.traces);
    std::vector<TraceEstimate> duan(n);
    std::vector<TraceEstimate> epr(n);
    #pragma omp parallel for schedule(static)
    for (int t = 0; t < config.traces; ++t) {
        const auto pair = detail::estimate_trace(sampler, config, t);
        duan[static_cast<std::size_t>(t)] = pair.duan;
        epr[static_cast<std::size_t>(t)] = pair.epr;
    }
    return {detail::aggregate(std::move(duan), true), detail::aggregate(std::move(epr), false)};
}

EstimateResult estimate_duan(const CovarianceMatrix& cm, const EstimatorConfig& config) {
    return estimate_criteria(cm, config).duan;
}

EstimateResult estimate_epr(const CovarianceMatrix& cm, const EstimatorConfig& config) {
    return estimate_criteria(cm, config).epr;
}

std::vector<LossSweepRow> loss_sweep_experiment(const SqueezerSpec& source, double eta0,
                                                std::span<const double> losses,
                                                const EstimatorConfig& config) {
    source.validate();
    config.validate();
    if (!(eta0 >= 0.0 && eta0 <= 1.0)) {
        throw std::invalid_argument("base efficiency must lie in [0, 1]");
    }
    for (const double loss : losses) {
        if (!(loss >= 0.0 && loss < 1.0)) {
            throw std::invalid_argument("loss points must lie in [0, 1), got " +
                                        std::to_string(loss));
        }
    }
    const CovarianceMatrix pair = entangled_pair(source);
    std::vector<LossSweepRow> rows(losses.size());
    // One loss point per thread; the traces of a point run serially here so
    // the parallel region is not nested.
    #pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < losses.size(); ++i) {
        const double eta = eta0 * (1.0 - losses[i]);
        const CovarianceMatrix cm = apply_loss(pair, LossChannel::symmetric(eta));
        const QuadratureSampler sampler(cm);
        std::vector<TraceEstimate> duan(static_cast<std::size_t>(config.traces));
        std::vector<TraceEstimate> epr(static_cast<std::size_t>(config.traces));
        for (int t = 0; t < config.traces; ++t) {
            const auto p = detail::estimate_trace(sampler, config, t);
            duan[static_cast<std::size_t>(t)] = p.duan;
            epr[static_cast<std::size_t>(t)] = p.epr;
        }
        rows[i] = {losses[i],
                   eta,
                   detail::aggregate(std::move(epr), false),
                   detail::aggregate(std::move(duan), true),
                   epr_product(cm).product,
                   duan_product(cm).product};
    }
    return rows;
}

}  // namespace quadent
