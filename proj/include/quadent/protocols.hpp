#pragma once

/**
 * @file
 * Protocol efficacies on the (n_min, n_excess) photon-number plane.
 *
 * Points on the plane are realized by a canonical family: a pure two-mode
 * squeezed state with Duan variance d0, plus isotropic classical noise u on
 * all four quadratures. Its Duan variances are d0 + u and its per-quadrature
 * beam variance is (d0 + 1/d0)/2 + u.
 *
 * Conventions:
 *  - teleportation: unity-gain coherent-state fidelity 1/sqrt((1+v+)(1+v-));
 *  - dense coding: Shannon capacity of the two quadrature sub-channels with
 *    Bell-measurement noise 2 v+-, signal power water-filled under the
 *    transmitted-beam photon budget, in bits;
 *  - reference capacity: squeezed-state channel log2(1 + 2 n_max).
 */

#include "quadent/criteria.hpp"
#include "quadent/gaussian.hpp"

#include <span>
#include <vector>

namespace quadent {

struct CanonicalFamilyState {
    double d0;
    double u;
    CovarianceMatrix cm;
};

struct PhotonBudget {
    double n_max;

    void validate() const;
};

/// Throws InfeasibleError for n_excess < 0 (or n_min < 0).
CanonicalFamilyState canonical_state(double n_min, double n_excess);
inline CanonicalFamilyState canonical_state(const PhotonCoordinates& c) {
    return canonical_state(c.n_min, c.n_excess);
}

double teleportation_fidelity(const CovarianceMatrix& cm);

/// Splits `total_power` over parallel Gaussian sub-channels with the given
/// noise powers so that sum log(1 + p_i / n_i) is maximal.
std::vector<double> water_fill(std::span<const double> noise, double total_power);

double densecoding_capacity(const CovarianceMatrix& cm, const PhotonBudget& budget);

double squeezed_channel_capacity(const PhotonBudget& budget);

struct AxisRange {
    double start;
    double stop;
    int points;

    [[nodiscard]] double at(int i) const;
};

struct EfficacyGridSpec {
    AxisRange n_min{0.0, 1.5, 50};
    AxisRange n_excess{0.0, 3.0, 50};

    void validate() const;
};

/// Efficacy values are NaN where the point is infeasible.
struct EfficacyRow {
    double n_min;
    double n_excess;
    bool feasible;
    double epr;
    double fidelity;
    std::vector<double> capacity_ratio;  ///< one per budget
};

EfficacyRow efficacy_at(double n_min, double n_excess, std::span<const PhotonBudget> budgets);

/// Row-major over (n_min, n_excess): n_min is the slow index. Evaluated in
/// parallel with deterministic ordering.
std::vector<EfficacyRow> efficacy_grid(const EfficacyGridSpec& spec,
                                       std::span<const PhotonBudget> budgets);

}  // namespace quadent
