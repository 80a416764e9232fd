#include "quadent/reference.hpp"

#include "quadent/criteria.hpp"

#include <stdexcept>

namespace quadent::reference {

std::vector<SpectrumRow> spectrum_sweep(const SourceSpectrumModel& model, const FrequencyGrid& grid) {
    model.validate();
    grid.validate();
    std::vector<SpectrumRow> rows;
    rows.reserve(static_cast<std::size_t>(grid.points));
    for (int i = 0; i < grid.points; ++i) {
        rows.push_back(spectrum_row(model, grid.at(i)));
    }
    return rows;
}

std::vector<EfficacyRow> efficacy_grid(const EfficacyGridSpec& spec,
                                       std::span<const PhotonBudget> budgets) {
    spec.validate();
    for (const auto& b : budgets) {
        b.validate();
    }
    std::vector<EfficacyRow> out;
    out.reserve(static_cast<std::size_t>(spec.n_min.points * spec.n_excess.points));
    for (int i = 0; i < spec.n_min.points; ++i) {
        for (int j = 0; j < spec.n_excess.points; ++j) {
            out.push_back(efficacy_at(spec.n_min.at(i), spec.n_excess.at(j), budgets));
        }
    }
    return out;
}

CriteriaEstimate estimate_criteria(const CovarianceMatrix& cm, const EstimatorConfig& config) {
    config.validate();
    const QuadratureSampler sampler(cm);
    std::vector<TraceEstimate> duan;
    std::vector<TraceEstimate> epr;
    for (int t = 0; t < config.traces; ++t) {
        const auto pair = detail::estimate_trace(sampler, config, t);
        duan.push_back(pair.duan);
        epr.push_back(pair.epr);
    }
    return {detail::aggregate(std::move(duan), true), detail::aggregate(std::move(epr), false)};
}

std::vector<LossSweepRow> loss_sweep_experiment(const SqueezerSpec& source, double eta0,
                                                std::span<const double> losses,
                                                const EstimatorConfig& config) {
    source.validate();
    if (!(eta0 >= 0.0 && eta0 <= 1.0)) {
        throw std::invalid_argument("base efficiency must lie in [0, 1]");
    }
    const CovarianceMatrix pair = entangled_pair(source);
    std::vector<LossSweepRow> rows;
    for (const double loss : losses) {
        if (!(loss >= 0.0 && loss < 1.0)) {
            throw std::invalid_argument("loss points must lie in [0, 1)");
        }
        const double eta = eta0 * (1.0 - loss);
        const CovarianceMatrix cm = apply_loss(pair, LossChannel::symmetric(eta));
        const CriteriaEstimate est = reference::estimate_criteria(cm, config);
        rows.push_back({loss, eta, est.epr, est.duan, epr_product(cm).product,
                        duan_product(cm).product});
    }
    return rows;
}

}  // namespace quadent::reference
