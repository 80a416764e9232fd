#include "quadent/spectra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quadent {

void SourceSpectrumModel::validate() const {
    const auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw std::invalid_argument(std::string("spectrum model: ") + what);
        }
    };
    require(s0 > 0.0 && s0 <= 1.0, "s0 must lie in (0, 1]");
    require(f_opa > 0.0, "f_opa must be positive");
    require(relax_amp >= 0.0, "relax_amp must be non-negative");
    require(relax_width > 0.0, "relax_width must be positive");
    require(std::isfinite(f_relax), "f_relax must be finite");
    require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
}

void FrequencyGrid::validate() const {
    if (!(f_start > 0.0 && f_start < f_stop)) {
        throw std::invalid_argument("frequency grid: need 0 < f_start < f_stop");
    }
    if (points < 2) {
        throw std::invalid_argument("frequency grid: need at least 2 points");
    }
}

double FrequencyGrid::at(int i) const {
    if (i == points - 1) {
        return f_stop;
    }
    return f_start + (f_stop - f_start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double squeezed_variance_at(const SourceSpectrumModel& model, double f) {
    if (!(f > 0.0)) {
        throw std::invalid_argument("sideband frequency must be positive");
    }
    const double r = f / model.f_opa;
    return 1.0 - (1.0 - model.s0) / (1.0 + r * r);
}

SqueezerSpec source_at(const SourceSpectrumModel& model, double f) {
    model.validate();
    return SqueezerSpec::pure(squeezed_variance_at(model, f));
}

double relaxation_excess(const SourceSpectrumModel& model, double f) {
    const double r = (f - model.f_relax) / model.relax_width;
    return model.relax_amp / (1.0 + r * r);
}

CovarianceMatrix state_at(const SourceSpectrumModel& model, double f) {
    const CovarianceMatrix pair = entangled_pair(source_at(model, f));
    const double e = relaxation_excess(model, f);
    const CovarianceMatrix noisy = add_excess_noise(pair, {e, 0.0, e, 0.0});
    return apply_loss(noisy, LossChannel::symmetric(model.eta));
}

SpectrumRow spectrum_row(const SourceSpectrumModel& model, double f) {
    const CovarianceMatrix cm = state_at(model, f);
    const DuanResult duan = duan_product(cm);
    const PhotonCoordinates coords = photon_coordinates(cm);
    return {f, duan.v_plus, duan.v_minus, duan.product, coords.n_min, coords.n_excess,
            coords.n_total};
}

std::vector<SpectrumRow> spectrum_sweep(const SourceSpectrumModel& model, const FrequencyGrid& grid) {
    model.validate();
    grid.validate();
    std::vector<SpectrumRow> rows(static_cast<std::size_t>(grid.points));
    #pragma omp parallel for schedule(static)
    for (int i = 0; i < grid.points; ++i) {
        rows[static_cast<std::size_t>(i)] = spectrum_row(model, grid.at(i));
    }
    return rows;
}

}  // namespace quadent
