#pragma once

/**
 * @file
 * Two-mode Gaussian states as quadrature covariance matrices, and the optical
 * elements that act on them: squeezers, a 50/50 beamsplitter with a relative
 * phase, a phase rotation and a pure-loss channel.
 *
 * Units: quadrature variances are relative to shot noise, so the vacuum state
 * has covariance matrix identity. Mean fields are not tracked.
 */

#include <Eigen/Dense>

#include <array>
#include <span>
#include <stdexcept>

namespace quadent {

enum class Beam { x, y };
enum class Quadrature { amplitude, phase };  // X+ and X-

/// Tolerance used by every physicality test in the library.
inline constexpr double physicality_tolerance = 1e-9;

/// Covariance matrix of one mode, ordered (X+, X-).
class ModeCovariance {
public:
    ModeCovariance() : m_(Eigen::Matrix2d::Identity()) {}
    explicit ModeCovariance(const Eigen::Matrix2d& m);

    [[nodiscard]] const Eigen::Matrix2d& matrix() const noexcept { return m_; }
    [[nodiscard]] double operator()(int i, int j) const { return m_(i, j); }

    /// Rotate the quadratures by `phase` radians: V -> R V R^T.
    [[nodiscard]] ModeCovariance rotated(double phase) const;

private:
    Eigen::Matrix2d m_;
};

/// Covariance matrix of the two beams, ordered (X+_x, X-_x, X+_y, X-_y).
/// Always exactly symmetric.
class CovarianceMatrix {
public:
    CovarianceMatrix() : m_(Eigen::Matrix4d::Identity()) {}

    /// Rejects inputs that are not symmetric to 1e-12 (relative) or have a
    /// non-positive diagonal; the stored matrix is the exact symmetrization.
    explicit CovarianceMatrix(const Eigen::Matrix4d& m);
    static CovarianceMatrix from_entries(std::span<const double, 16> row_major);
    static CovarianceMatrix vacuum() { return CovarianceMatrix{}; }
    static CovarianceMatrix product(const ModeCovariance& x, const ModeCovariance& y);

    [[nodiscard]] const Eigen::Matrix4d& matrix() const noexcept { return m_; }
    [[nodiscard]] double operator()(int i, int j) const { return m_(i, j); }

    [[nodiscard]] static int index(Beam beam, Quadrature q) noexcept {
        return (beam == Beam::x ? 0 : 2) + (q == Quadrature::amplitude ? 0 : 1);
    }
    [[nodiscard]] double variance(Beam beam, Quadrature q) const {
        return m_(index(beam, q), index(beam, q));
    }
    /// Cov(X^q_x, X^q_y).
    [[nodiscard]] double cross(Quadrature q) const {
        return m_(index(Beam::x, q), index(Beam::y, q));
    }

    [[nodiscard]] ModeCovariance mode(Beam beam) const;

private:
    struct unchecked_tag {};
    CovarianceMatrix(const Eigen::Matrix4d& m, unchecked_tag);
    friend CovarianceMatrix symmetrized(const Eigen::Matrix4d& m);

    Eigen::Matrix4d m_;
};

/// Used internally after products like S V S^T, which are symmetric only up to
/// rounding.
CovarianceMatrix symmetrized(const Eigen::Matrix4d& m);

/// One squeezed source: variance of the squeezed quadrature and of its
/// conjugate. A pure source has squeezed * anti == 1.
struct SqueezerSpec {
    double squeezed{1.0};
    double anti{1.0};

    /// Throws std::invalid_argument unless s > 0, s <= A and A >= 1/s.
    void validate() const;
    [[nodiscard]] bool is_pure(double tol = 1e-12) const;
    static SqueezerSpec pure(double squeezed) { return {squeezed, 1.0 / squeezed}; }
    static SqueezerSpec from_db(double squeezing_db);
};

/// Power transmission of each beam.
struct LossChannel {
    double eta_x{1.0};
    double eta_y{1.0};

    void validate() const;
    static LossChannel symmetric(double eta) { return {eta, eta}; }
};

struct PhysicalityReport {
    double nu_minus;  ///< smaller symplectic eigenvalue
    double nu_plus;
    bool physical;
};

/// diag(s, A), the amplitude quadrature being the squeezed one.
ModeCovariance squeezed_state(const SqueezerSpec& spec);

/// Interferes two modes on a symmetric 50/50 beamsplitter after rotating the
/// second one by `relative_phase`: x = (in1 + in2)/sqrt2, y = (in1 - in2)/sqrt2.
CovarianceMatrix entangle(const ModeCovariance& in1, const ModeCovariance& in2,
                          double relative_phase);

/// Two identical sources interfered at pi/2, the standard entangling circuit.
CovarianceMatrix entangled_pair(const SqueezerSpec& source);

/// V -> H V H + (I - H^2), H = diag(sqrt eta_x, sqrt eta_x, sqrt eta_y, sqrt eta_y).
CovarianceMatrix apply_loss(const CovarianceMatrix& cm, const LossChannel& channel);

/// Adds uncorrelated classical noise to each quadrature; ordered like the
/// matrix. Negative entries are rejected.
CovarianceMatrix add_excess_noise(const CovarianceMatrix& cm, const std::array<double, 4>& noise);

/// Mean sideband photon number (V+ + V- - 2)/4 of one beam.
double photon_number(const CovarianceMatrix& cm, Beam beam);

struct SymplecticInvariants {
    double det_v;  ///< nu_-^2 nu_+^2
    double delta;  ///< det A + det B + 2 det C = nu_-^2 + nu_+^2
};

SymplecticInvariants symplectic_invariants(const CovarianceMatrix& cm);

/// Symplectic eigenvalues (moduli of the eigenvalues of i Omega V) and the
/// uncertainty-principle test nu_- >= 1 - physicality_tolerance.
PhysicalityReport physicality_check(const CovarianceMatrix& cm);

/// Same, for a raw row-major matrix; rejects a non-symmetric input.
PhysicalityReport physicality_check(std::span<const double, 16> row_major);

}  // namespace quadent
