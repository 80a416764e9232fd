#include "doctest.h"

#include "quadent/reference.hpp"

#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace quadent;

namespace {

// Bitwise equality, so NaN markers compare equal to themselves.
bool same(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

bool same(const EstimateResult& a, const EstimateResult& b) {
    if (!same(a.value, b.value) || !same(a.std_error, b.std_error) ||
        !same(a.raw_value, b.raw_value) || a.traces.size() != b.traces.size()) {
        return false;
    }
    for (std::size_t t = 0; t < a.traces.size(); ++t) {
        if (!same(a.traces[t].plus, b.traces[t].plus) || !same(a.traces[t].minus, b.traces[t].minus)) {
            return false;
        }
    }
    return true;
}

void with_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace

TEST_CASE("spectrum sweep") {
    const SourceSpectrumModel model;
    const FrequencyGrid grid{1e5, 2e7, 301};
    const auto serial = reference::spectrum_sweep(model, grid);
    for (const int threads : {1, 3, 8}) {
        with_threads(threads);
        const auto parallel = spectrum_sweep(model, grid);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(same(parallel[i].freq_hz, serial[i].freq_hz));
            CHECK(same(parallel[i].v_plus, serial[i].v_plus));
            CHECK(same(parallel[i].v_minus, serial[i].v_minus));
            CHECK(same(parallel[i].n_excess, serial[i].n_excess));
        }
    }
}

TEST_CASE("efficacy grid") {
    const std::vector<PhotonBudget> budgets{{6.75}, {250.0}};
    const EfficacyGridSpec spec{{0.0, 1.5, 17}, {-0.5, 3.0, 23}};
    const auto serial = reference::efficacy_grid(spec, budgets);
    for (const int threads : {1, 4}) {
        with_threads(threads);
        const auto parallel = efficacy_grid(spec, budgets);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(parallel[i].feasible == serial[i].feasible);
            CHECK(same(parallel[i].epr, serial[i].epr));
            CHECK(same(parallel[i].fidelity, serial[i].fidelity));
            CHECK(same(parallel[i].capacity_ratio[0], serial[i].capacity_ratio[0]));
            CHECK(same(parallel[i].capacity_ratio[1], serial[i].capacity_ratio[1]));
        }
    }
}

TEST_CASE("Monte-Carlo estimation") {
    const CovarianceMatrix cm = apply_loss(entangled_pair({0.34, 3.2}), LossChannel::symmetric(0.85));
    EstimatorConfig config;
    config.traces = 13;
    config.gain_mode = GainMode::dark_biased;
    const auto serial = reference::estimate_criteria(cm, config);
    for (const int threads : {1, 2, 5}) {
        with_threads(threads);
        const auto parallel = estimate_criteria(cm, config);
        CHECK(same(parallel.duan, serial.duan));
        CHECK(same(parallel.epr, serial.epr));
    }
}

TEST_CASE("loss sweep") {
    const std::vector<double> losses{0.0, 0.2, 0.45, 0.5, 0.9};
    EstimatorConfig config;
    config.traces = 4;
    const auto serial = reference::loss_sweep_experiment({0.34, 3.2}, 0.9, losses, config);
    for (const int threads : {1, 3}) {
        with_threads(threads);
        const auto parallel = loss_sweep_experiment({0.34, 3.2}, 0.9, losses, config);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(same(parallel[i].total_efficiency, serial[i].total_efficiency));
            CHECK(same(parallel[i].epr, serial[i].epr));
            CHECK(same(parallel[i].duan, serial[i].duan));
            CHECK(same(parallel[i].epr_analytic, serial[i].epr_analytic));
        }
    }
}
