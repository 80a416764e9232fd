#include "quadent/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quadent {

namespace {

Beam other(Beam b) { return b == Beam::x ? Beam::y : Beam::x; }

// Conditional-variance product of the calibrated circuit for a given A.
double circuit_epr(double squeezed, double anti, double eta) {
    const CovarianceMatrix cm =
        apply_loss(entangled_pair(SqueezerSpec{squeezed, anti}), LossChannel::symmetric(eta));
    return epr_product(cm).product;
}

}  // namespace

ConditionalVariance conditional_variance(const CovarianceMatrix& cm, Quadrature q, Beam inferred) {
    const double v_inferred = cm.variance(inferred, q);
    const double v_conditioner = cm.variance(other(inferred), q);
    if (!(v_conditioner > 0.0)) {
        throw std::invalid_argument("conditioning quadrature has zero variance");
    }
    const double cov = cm.cross(q);
    const double gain = cov / v_conditioner;
    return {v_inferred - gain * cov, gain};
}

EprResult epr_product(const CovarianceMatrix& cm) {
    const auto plus = conditional_variance(cm, Quadrature::amplitude);
    const auto minus = conditional_variance(cm, Quadrature::phase);
    return {plus.variance, minus.variance, plus.variance * minus.variance,
            {plus.gain, minus.gain}};
}

double epr_closed_form(double squeezed, double eta) {
    const double inner =
        1.0 - eta + (2.0 * eta - 1.0) / (eta * (squeezed + 1.0 / squeezed - 2.0) + 2.0);
    return 4.0 * inner * inner;
}

DuanGeneralResult duan_general(const CovarianceMatrix& cm, double a) {
    if (a == 0.0 || !std::isfinite(a)) {
        throw std::invalid_argument("Duan parameter a must be finite and non-zero");
    }
    const double ax = std::abs(a);
    const double by = 1.0 / a;
    // <(ax X_x + sign by X_y)^2> for either sign
    const auto term = [&](Quadrature q, double sign) {
        return ax * ax * cm.variance(Beam::x, q) + by * by * cm.variance(Beam::y, q) +
               2.0 * sign * ax * by * cm.cross(q);
    };
    const double amp_sum = term(Quadrature::amplitude, +1.0);
    const double amp_diff = term(Quadrature::amplitude, -1.0);
    const double ph_sum = term(Quadrature::phase, +1.0);
    const double ph_diff = term(Quadrature::phase, -1.0);
    return {std::min(amp_sum, amp_diff) + std::min(ph_sum, ph_diff),
            2.0 * (a * a + 1.0 / (a * a)), amp_sum <= amp_diff, ph_sum <= ph_diff};
}

DuanResult duan_product(const CovarianceMatrix& cm) {
    const auto joint = [&](Quadrature q) {
        const double base = cm.variance(Beam::x, q) + cm.variance(Beam::y, q);
        return (base - 2.0 * std::abs(cm.cross(q))) / 2.0;
    };
    const double vp = joint(Quadrature::amplitude);
    const double vm = joint(Quadrature::phase);
    return {vp, vm, std::sqrt(vp * vm), vp + vm, 1.0};
}

double duan_closed_form(double squeezed, double eta) { return eta * squeezed + (1.0 - eta); }

double n_min(double d) {
    if (!(d > 0.0)) {
        throw std::invalid_argument("Duan product must be positive, got " + std::to_string(d));
    }
    if (d >= 1.0) {
        return 0.0;
    }
    return (d + 1.0 / d) / 2.0 - 1.0;
}

PhotonCoordinates photon_coordinates(const CovarianceMatrix& cm) {
    const double total = photon_number(cm, Beam::x) + photon_number(cm, Beam::y);
    const double required = n_min(duan_product(cm).product);
    return {required, total - required, total};
}

SqueezerSpec calibrate_source(const CalibrationTargets& t) {
    if (!(t.eta > 0.0 && t.eta <= 1.0)) {
        throw std::invalid_argument("calibration efficiency must lie in (0, 1]");
    }
    if (!(t.duan_target > 1.0 - t.eta && t.duan_target < 1.0)) {
        throw InfeasibleError("Duan target " + std::to_string(t.duan_target) +
                              " is not reachable: it must lie in (1 - eta, 1)");
    }
    const double s = (t.duan_target - (1.0 - t.eta)) / t.eta;
    const double pure_anti = 1.0 / s;
    const double pure_value = circuit_epr(s, pure_anti, t.eta);
    const double ceiling = 4.0 * t.duan_target * t.duan_target;  // A -> infinity

    if (std::abs(t.epr_target - pure_value) <= 1e-12) {
        return {s, pure_anti};
    }
    if (t.epr_target < pure_value) {
        throw InfeasibleError("EPR target " + std::to_string(t.epr_target) +
                              " is below the pure-source value " + std::to_string(pure_value));
    }
    if (!(t.epr_target < ceiling)) {
        throw InfeasibleError("EPR target " + std::to_string(t.epr_target) +
                              " is unreachable; the impure-source limit is " +
                              std::to_string(ceiling));
    }

    double lo = pure_anti;
    double hi = 2.0 * pure_anti;
    while (circuit_epr(s, hi, t.eta) < t.epr_target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e15) {
            throw InfeasibleError("EPR target bracket diverged");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (circuit_epr(s, mid, t.eta) < t.epr_target ? lo : hi) = mid;
    }
    return {s, 0.5 * (lo + hi)};
}

}  // namespace quadent
