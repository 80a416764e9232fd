#pragma once

// EPR (conditional-variance) and inseparability (sum/difference variance)
// criteria, the photon-number decomposition, and the calibration of an impure
// source model to a measured pair of criterion values.

#include "quadent/gaussian.hpp"

#include <stdexcept>

namespace quadent {

/// Raised when a requested target cannot be reached inside the physical domain.
class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ConditionalVariance {
    double variance;
    double gain;  ///< g* = Cov(x, y) / Var(conditioner)
};

struct GainPair {
    double g_plus;
    double g_minus;
};

struct EprResult {
    double cv_plus;
    double cv_minus;
    double product;
    GainPair gains;

    [[nodiscard]] bool satisfied() const noexcept { return product < 1.0; }
};

struct DuanResult {
    double v_plus;   ///< min over sum/difference of the amplitude quadratures, two-beam units
    double v_minus;
    double product;  ///< sqrt(v_plus v_minus)
    double sum;      ///< v_plus + v_minus
    double a_param{1.0};

    [[nodiscard]] bool product_satisfied() const noexcept { return product < 1.0; }
    [[nodiscard]] bool sum_satisfied() const noexcept { return sum < 2.0; }
};

struct DuanGeneralResult {
    double lhs;
    double rhs;              ///< 2(a^2 + 1/a^2)
    bool amplitude_uses_sum; ///< sign chosen for the amplitude term
    bool phase_uses_sum;

    [[nodiscard]] bool satisfied() const noexcept { return lhs < rhs; }
};

struct PhotonCoordinates {
    double n_min;
    double n_excess;
    double n_total;
};

/// Residual variance of `inferred`'s quadrature after the best linear estimate
/// from the other beam: V_inf - Cov^2 / V_cond. Throws on a zero-variance
/// conditioner.
ConditionalVariance conditional_variance(const CovarianceMatrix& cm, Quadrature q,
                                         Beam inferred = Beam::x);

/// Product of the amplitude and phase conditional variances of x given y.
EprResult epr_product(const CovarianceMatrix& cm);

/// 4 (1 - eta + (2 eta - 1) / (eta (s + 1/s - 2) + 2))^2, for two pure sources
/// of squeezed variance s behind symmetric efficiency eta.
double epr_closed_form(double squeezed, double eta);

/// <(|a| X+_x +- X+_y / a)^2> + <(|a| X-_x -+ X-_y / a)^2> against 2(a^2 + a^-2),
/// each sign chosen to minimize its term.
DuanGeneralResult duan_general(const CovarianceMatrix& cm, double a);

DuanResult duan_product(const CovarianceMatrix& cm);

/// eta s + (1 - eta).
double duan_closed_form(double squeezed, double eta);

/// Minimum mean photon number supporting a Duan product d: (d + 1/d)/2 - 1.
/// Separable states (d >= 1) need none, so this returns 0 there.
double n_min(double duan_product_value);

PhotonCoordinates photon_coordinates(const CovarianceMatrix& cm);

struct CalibrationTargets {
    double duan_target{0.44};
    double epr_target{0.58};
    double eta{0.85};
};

/// Fits an impure source (s, A) to the measured Duan and EPR products at fixed
/// symmetric efficiency. s follows from the Duan value in closed form; A is
/// found by bisection on the EPR product, which rises monotonically from the
/// pure value at A = 1/s toward 4 d^2 as A grows. Throws InfeasibleError when
/// either target lies outside that range.
SqueezerSpec calibrate_source(const CalibrationTargets& targets);

}  // namespace quadent
