#include "quadent/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quadent {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

bool feasible_coordinates(double n_min, double n_excess) {
    return std::isfinite(n_min) && std::isfinite(n_excess) && n_min >= 0.0 && n_excess >= 0.0;
}

}  // namespace

void PhotonBudget::validate() const {
    if (!(n_max > 0.0) || !std::isfinite(n_max)) {
        throw std::invalid_argument("photon budget must be positive, got " + std::to_string(n_max));
    }
}

CanonicalFamilyState canonical_state(double n_min_req, double n_excess) {
    if (!feasible_coordinates(n_min_req, n_excess)) {
        throw InfeasibleError("photon coordinates (" + std::to_string(n_min_req) + ", " +
                              std::to_string(n_excess) + ") are outside the canonical family");
    }
    // d + 1/d = 2(1 + n_min), taking the root d <= 1.
    const double k = 2.0 * (1.0 + n_min_req);
    const double d = 2.0 / (k + std::sqrt(std::max(0.0, k * k - 4.0)));
    // Beam variance (d0 + 1/d0)/2 + u = 1 + n_total with u = d - d0
    // gives (1/d0 - d0)/2 = 1 + n_total - d.
    const double b = 1.0 + n_min_req + n_excess - d;
    const double d0 = 1.0 / (b + std::sqrt(b * b + 1.0));
    const double u = std::max(0.0, d - d0);

    const double var = 0.5 * (d0 + 1.0 / d0) + u;
    const double cov = 0.5 * (1.0 / d0 - d0);
    Eigen::Matrix4d m;
    m << var, 0, -cov, 0,
         0, var, 0, cov,
         -cov, 0, var, 0,
         0, cov, 0, var;
    return {d0, u, CovarianceMatrix{m}};
}

double teleportation_fidelity(const CovarianceMatrix& cm) {
    const DuanResult duan = duan_product(cm);
    return 1.0 / std::sqrt((1.0 + duan.v_plus) * (1.0 + duan.v_minus));
}

std::vector<double> water_fill(std::span<const double> noise, double total_power) {
    if (noise.empty()) {
        throw std::invalid_argument("water_fill needs at least one sub-channel");
    }
    if (!(total_power >= 0.0)) {
        throw std::invalid_argument("water_fill power must be non-negative");
    }
    for (const double n : noise) {
        if (!(n > 0.0)) {
            throw std::invalid_argument("water_fill noise powers must be positive");
        }
    }
    std::vector<std::size_t> order(noise.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return noise[a] < noise[b]; });

    // Largest active set whose water level stays above its noisiest member.
    double level = 0.0;
    double noise_sum = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        noise_sum += noise[order[k]];
        const double candidate = (total_power + noise_sum) / static_cast<double>(k + 1);
        if (candidate <= noise[order[k]]) {
            break;
        }
        level = candidate;
    }
    std::vector<double> power(noise.size());
    for (std::size_t i = 0; i < noise.size(); ++i) {
        power[i] = std::max(0.0, level - noise[i]);
    }
    return power;
}

double densecoding_capacity(const CovarianceMatrix& cm, const PhotonBudget& budget) {
    budget.validate();
    if (!physicality_check(cm).physical) {
        throw std::invalid_argument("dense-coding resource state is not physical");
    }
    const double signal_photons = budget.n_max - photon_number(cm, Beam::x);
    if (signal_photons <= 0.0) {
        return 0.0;
    }
    const DuanResult duan = duan_product(cm);
    const std::array<double, 2> noise{2.0 * duan.v_plus, 2.0 * duan.v_minus};
    const std::vector<double> power = water_fill(noise, 4.0 * signal_photons);
    double bits = 0.0;
    for (std::size_t i = 0; i < noise.size(); ++i) {
        bits += 0.5 * std::log2(1.0 + power[i] / noise[i]);
    }
    return bits;
}

double squeezed_channel_capacity(const PhotonBudget& budget) {
    budget.validate();
    return std::log2(1.0 + 2.0 * budget.n_max);
}

double AxisRange::at(int i) const {
    if (points == 1) {
        return start;
    }
    if (i == points - 1) {
        return stop;
    }
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

void EfficacyGridSpec::validate() const {
    for (const AxisRange* axis : {&n_min, &n_excess}) {
        if (axis->points < 2) {
            throw std::invalid_argument("efficacy grid resolution must be at least 2 per axis");
        }
        if (!(axis->start <= axis->stop) || !std::isfinite(axis->start) ||
            !std::isfinite(axis->stop)) {
            throw std::invalid_argument("efficacy grid range must satisfy start <= stop");
        }
    }
}

EfficacyRow efficacy_at(double n_min_req, double n_excess, std::span<const PhotonBudget> budgets) {
    EfficacyRow row{n_min_req, n_excess, false, nan, nan,
                    std::vector<double>(budgets.size(), nan)};
    if (!feasible_coordinates(n_min_req, n_excess)) {
        return row;
    }
    const CanonicalFamilyState state = canonical_state(n_min_req, n_excess);
    row.feasible = true;
    row.epr = epr_product(state.cm).product;
    row.fidelity = teleportation_fidelity(state.cm);
    for (std::size_t b = 0; b < budgets.size(); ++b) {
        row.capacity_ratio[b] =
            densecoding_capacity(state.cm, budgets[b]) / squeezed_channel_capacity(budgets[b]);
    }
    return row;
}

std::vector<EfficacyRow> efficacy_grid(const EfficacyGridSpec& spec,
                                       std::span<const PhotonBudget> budgets) {
    spec.validate();
    for (const auto& b : budgets) {
        b.validate();
    }
    const int rows = spec.n_min.points;
    const int cols = spec.n_excess.points;
    std::vector<EfficacyRow> out(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    #pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            out[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                static_cast<std::size_t>(j)] =
                efficacy_at(spec.n_min.at(i), spec.n_excess.at(j), budgets);
        }
    }
    return out;
}

}  // namespace quadent
