#include "quadent/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace quadent {

namespace {

Eigen::Matrix2d rotation(double phase) {
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
}

// Symmetric 50/50 beamsplitter acting on (in1, in2) quadrature pairs.
Eigen::Matrix4d beamsplitter() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4d s;
    s << r, 0, r, 0,
         0, r, 0, r,
         r, 0, -r, 0,
         0, r, 0, -r;
    return s;
}

}  // namespace

ModeCovariance::ModeCovariance(const Eigen::Matrix2d& m) : m_(m) {
    if (std::abs(m(0, 1) - m(1, 0)) > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("mode covariance is not symmetric");
    }
    if (!(m(0, 0) > 0.0) || !(m(1, 1) > 0.0)) {
        throw std::invalid_argument("mode covariance has a non-positive variance");
    }
    const double off = 0.5 * (m(0, 1) + m(1, 0));
    m_(0, 1) = off;
    m_(1, 0) = off;
}

ModeCovariance ModeCovariance::rotated(double phase) const {
    const Eigen::Matrix2d r = rotation(phase);
    Eigen::Matrix2d out = r * m_ * r.transpose();
    const double off = 0.5 * (out(0, 1) + out(1, 0));
    out(0, 1) = off;
    out(1, 0) = off;
    return ModeCovariance{out};
}

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& m) : m_(m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(m(i, i)) || !(m(i, i) > 0.0)) {
            throw std::invalid_argument("covariance matrix diagonal entry " + std::to_string(i) +
                                        " is not positive");
        }
        for (int j = i + 1; j < 4; ++j) {
            if (!(std::abs(m(i, j) - m(j, i)) <= 1e-12 * scale)) {
                throw std::invalid_argument("covariance matrix is not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    m_ = 0.5 * (m + m.transpose());
}

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& m, unchecked_tag)
    : m_(0.5 * (m + m.transpose())) {}

CovarianceMatrix CovarianceMatrix::from_entries(std::span<const double, 16> row_major) {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = row_major[static_cast<std::size_t>(4 * i + j)];
        }
    }
    return CovarianceMatrix{m};
}

CovarianceMatrix CovarianceMatrix::product(const ModeCovariance& x, const ModeCovariance& y) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.topLeftCorner<2, 2>() = x.matrix();
    m.bottomRightCorner<2, 2>() = y.matrix();
    return CovarianceMatrix{m};
}

ModeCovariance CovarianceMatrix::mode(Beam beam) const {
    const int o = beam == Beam::x ? 0 : 2;
    return ModeCovariance{m_.block<2, 2>(o, o)};
}

CovarianceMatrix symmetrized(const Eigen::Matrix4d& m) {
    return CovarianceMatrix{m, CovarianceMatrix::unchecked_tag{}};
}

void SqueezerSpec::validate() const {
    if (!std::isfinite(squeezed) || !(squeezed > 0.0)) {
        throw std::invalid_argument("squeezed variance must be positive, got " +
                                    std::to_string(squeezed));
    }
    if (!std::isfinite(anti) || anti * squeezed < 1.0 - 1e-12) {
        throw std::invalid_argument("anti-squeezed variance " + std::to_string(anti) +
                                    " violates the uncertainty bound A >= 1/s");
    }
    if (squeezed > anti) {
        throw std::invalid_argument("squeezed variance exceeds anti-squeezed variance");
    }
}

bool SqueezerSpec::is_pure(double tol) const { return std::abs(squeezed * anti - 1.0) <= tol; }

SqueezerSpec SqueezerSpec::from_db(double squeezing_db) {
    return pure(std::pow(10.0, -squeezing_db / 10.0));
}

void LossChannel::validate() const {
    for (const double eta : {eta_x, eta_y}) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw std::invalid_argument("efficiency must lie in [0, 1], got " + std::to_string(eta));
        }
    }
}

ModeCovariance squeezed_state(const SqueezerSpec& spec) {
    spec.validate();
    return ModeCovariance{Eigen::Vector2d{spec.squeezed, spec.anti}.asDiagonal()};
}

CovarianceMatrix entangle(const ModeCovariance& in1, const ModeCovariance& in2,
                          double relative_phase) {
    const CovarianceMatrix inputs = CovarianceMatrix::product(in1, in2.rotated(relative_phase));
    const Eigen::Matrix4d s = beamsplitter();
    return symmetrized(s * inputs.matrix() * s.transpose());
}

CovarianceMatrix entangled_pair(const SqueezerSpec& source) {
    const ModeCovariance mode = squeezed_state(source);
    return entangle(mode, mode, std::numbers::pi / 2);
}

CovarianceMatrix apply_loss(const CovarianceMatrix& cm, const LossChannel& channel) {
    channel.validate();
    const Eigen::Vector4d h{std::sqrt(channel.eta_x), std::sqrt(channel.eta_x),
                            std::sqrt(channel.eta_y), std::sqrt(channel.eta_y)};
    Eigen::Matrix4d out = h.asDiagonal() * cm.matrix() * h.asDiagonal();
    out.diagonal() += (Eigen::Vector4d::Ones() - h.cwiseProduct(h));
    return symmetrized(out);
}

CovarianceMatrix add_excess_noise(const CovarianceMatrix& cm, const std::array<double, 4>& noise) {
    Eigen::Matrix4d out = cm.matrix();
    for (int i = 0; i < 4; ++i) {
        const double n = noise[static_cast<std::size_t>(i)];
        if (!(n >= 0.0)) {
            throw std::invalid_argument("excess noise must be non-negative");
        }
        out(i, i) += n;
    }
    return symmetrized(out);
}

double photon_number(const CovarianceMatrix& cm, Beam beam) {
    return (cm.variance(beam, Quadrature::amplitude) + cm.variance(beam, Quadrature::phase) - 2.0) /
           4.0;
}

SymplecticInvariants symplectic_invariants(const CovarianceMatrix& cm) {
    const Eigen::Matrix4d& v = cm.matrix();
    const double det_a = v.block<2, 2>(0, 0).determinant();
    const double det_b = v.block<2, 2>(2, 2).determinant();
    const double det_c = v.block<2, 2>(0, 2).determinant();
    return {v.determinant(), det_a + det_b + 2.0 * det_c};
}

PhysicalityReport physicality_check(const CovarianceMatrix& cm) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(cm.matrix());
    if (eig.eigenvalues().minCoeff() <= 0.0) {
        // Not even positive definite; report the invariant-based values.
        const auto [det_v, delta] = symplectic_invariants(cm);
        const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det_v));
        const double nu_plus = std::sqrt(std::max(0.0, 0.5 * (delta + disc)));
        const double nu_minus = std::sqrt(std::max(0.0, 0.5 * (delta - disc)));
        return {nu_minus, nu_plus, false};
    }
    // M = V^1/2 Omega V^1/2 is antisymmetric with singular values nu_-, nu_-,
    // nu_+, nu_+. M^T M is symmetric, so its spectrum stays well conditioned
    // when the symplectic eigenvalues are degenerate (pure states), unlike the
    // roots of the invariant quadratic.
    const Eigen::Matrix4d root = eig.operatorSqrt();
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    const Eigen::Matrix4d m = root * omega * root;
    const Eigen::Matrix4d mtm = m.transpose() * m;
    const Eigen::Vector4d nu2 = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(
                                    0.5 * (mtm + mtm.transpose()), Eigen::EigenvaluesOnly)
                                    .eigenvalues();
    const double nu_minus = std::sqrt(std::max(0.0, 0.5 * (nu2(0) + nu2(1))));
    const double nu_plus = std::sqrt(std::max(0.0, 0.5 * (nu2(2) + nu2(3))));
    return {nu_minus, nu_plus, nu_minus >= 1.0 - physicality_tolerance};
}

PhysicalityReport physicality_check(std::span<const double, 16> row_major) {
    return physicality_check(CovarianceMatrix::from_entries(row_major));
}

}  // namespace quadent
