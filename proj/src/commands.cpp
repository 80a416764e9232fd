#include "quadent/commands.hpp"

#include "quadent/csv.hpp"
#include "quadent/rng.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

namespace quadent::cli {

namespace {

std::string summary_number(double value) {
    if (!std::isfinite(value)) {
        return "NA";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

template <typename... Values>
void row(std::ostringstream& out, const Values&... values) {
    bool first = true;
    const auto put = [&](const auto& v) {
        if (!first) {
            out << ',';
        }
        first = false;
        if constexpr (std::is_arithmetic_v<std::decay_t<decltype(v)>>) {
            out << csv::number(static_cast<double>(v));
        } else {
            out << v;
        }
    };
    (put(values), ...);
    out << '\n';
}

CovarianceMatrix measured_state(const RunConfig& config) {
    return apply_loss(entangled_pair(config.resolved_source()),
                      LossChannel::symmetric(config.efficiency));
}

}  // namespace

RunConfig apply_overrides(RunConfig config, std::string_view command, const Overrides& o) {
    if (o.seed) {
        config.estimator.seed = *o.seed;
    }
    if (o.points) {
        if (command == "loss-sweep") {
            config.loss_grid.points = *o.points;
        } else if (command == "spectrum") {
            config.frequency_grid.points = *o.points;
        } else if (command == "contours") {
            config.contour_grid.n_min.points = *o.points;
            config.contour_grid.n_excess.points = *o.points;
        } else {
            config.estimator.points_per_trace = *o.points;
        }
    }
    // Same validation path as a file-sourced config.
    return parse_config(to_json(config));
}

std::string header_line(std::string_view command, const RunConfig& config) {
    std::ostringstream out;
    out << "# quadent " << tool_version << " command=" << command
        << " config_hash=" << config_hash(config) << " generator=" << generator_identity << '\n';
    return out.str();
}

std::string loss_sweep_csv(const RunConfig& config) {
    const std::vector<double> losses = config.loss_points();
    const auto rows = loss_sweep_experiment(config.resolved_source(),
                                            config.loss_grid.base_efficiency, losses,
                                            config.estimator);
    std::ostringstream out;
    out << header_line("loss-sweep", config);
    out << "loss,total_efficiency,epr_estimate,epr_stderr,epr_analytic,duan_estimate,duan_stderr,"
           "duan_analytic\n";
    for (const auto& r : rows) {
        row(out, r.loss, r.total_efficiency, r.epr.value, r.epr.std_error, r.epr_analytic,
            r.duan.value, r.duan.std_error, r.duan_analytic);
    }
    return out.str();
}

std::string spectrum_csv(const RunConfig& config) {
    const auto rows = spectrum_sweep(config.spectrum, config.frequency_grid);
    std::ostringstream out;
    out << header_line("spectrum", config);
    out << "freq_hz,v_plus,v_minus,duan_product,n_min,n_excess,n_total\n";
    for (const auto& r : rows) {
        row(out, r.freq_hz, r.v_plus, r.v_minus, r.duan_product, r.n_min, r.n_excess, r.n_total);
    }
    return out.str();
}

std::string contours_csv(const RunConfig& config) {
    const auto rows = efficacy_grid(config.contour_grid, config.budgets);
    std::ostringstream out;
    out << header_line("contours", config);
    out << "n_min,n_excess,epr,fidelity";
    for (std::size_t b = 0; b < config.budgets.size(); ++b) {
        out << ",ratio_b" << (b + 1);
    }
    out << '\n';
    for (const auto& r : rows) {
        out << csv::number(r.n_min) << ',' << csv::number(r.n_excess) << ','
            << csv::number(r.epr) << ',' << csv::number(r.fidelity);
        for (const double ratio : r.capacity_ratio) {
            out << ',' << csv::number(ratio);
        }
        out << '\n';
    }
    return out.str();
}

EstimateOutput estimate_csv(const RunConfig& config) {
    const CriteriaEstimate est = estimate_criteria(measured_state(config), config.estimator);
    std::ostringstream out;
    out << header_line("estimate", config);
    out << "kind,trace,duan_v_plus,duan_v_minus,duan_product,epr_cv_plus,epr_cv_minus,"
           "epr_product\n";
    for (std::size_t t = 0; t < est.duan.traces.size(); ++t) {
        const auto& d = est.duan.traces[t];
        const auto& e = est.epr.traces[t];
        out << "trace," << t << ',';
        row(out, d.plus, d.minus, d.product, e.plus, e.minus, e.product);
    }
    const auto& d = est.duan;
    const auto& e = est.epr;
    out << "value,NA,";
    row(out, d.mean_plus, d.mean_minus, d.value, e.mean_plus, e.mean_minus, e.value);
    out << "raw,NA,NA,NA,";
    row(out, d.raw_value, std::string("NA"), std::string("NA"), e.raw_value);
    out << "stderr,NA,NA,NA,";
    row(out, d.std_error, std::string("NA"), std::string("NA"), e.std_error);

    std::ostringstream summary;
    summary << "duan=" << summary_number(d.value) << "±" << summary_number(d.std_error)
            << " epr=" << summary_number(e.value) << "±" << summary_number(e.std_error)
            << " seed=" << config.estimator.seed;
    return {out.str(), summary.str()};
}

int run(int argc, char** argv) {
    CLI::App app{"Gaussian model of quadrature entanglement: criteria, loss, spectra, contours"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    struct Options {
        std::string config;
        std::string out;
        std::string dump;
        std::optional<std::uint64_t> seed;
        std::optional<int> points;
    } opts;

    const auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config, "JSON run configuration (defaults if omitted)");
        sub->add_option("--out", opts.out, "output CSV path")->required();
        sub->add_option("--seed", opts.seed, "override estimator.seed");
        sub->add_option("--points", opts.points, "override the command's grid size");
        sub->add_option("--dump-config", opts.dump, "also write the effective config as JSON");
        return sub;
    };
    add("loss-sweep", "criteria versus symmetric total loss (estimates and analytic curves)");
    add("spectrum", "sideband spectra of the inseparability variances and photon numbers");
    add("contours", "protocol efficacies on the (n_min, n_excess) plane");
    add("estimate", "Monte-Carlo estimate of both criteria for the configured state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        RunConfig config = opts.config.empty() ? parse_config(nlohmann::json::object())
                                               : load_config(opts.config);
        config = apply_overrides(std::move(config), command, {opts.seed, opts.points});
        if (!opts.dump.empty()) {
            csv::write_atomic(opts.dump, to_json(config).dump(2) + "\n");
        }
        if (command == "loss-sweep") {
            csv::write_atomic(opts.out, loss_sweep_csv(config));
        } else if (command == "spectrum") {
            csv::write_atomic(opts.out, spectrum_csv(config));
        } else if (command == "contours") {
            csv::write_atomic(opts.out, contours_csv(config));
        } else {
            const EstimateOutput result = estimate_csv(config);
            csv::write_atomic(opts.out, result.csv);
            std::cout << result.summary << '\n';
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace quadent::cli
