#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trigspline/dataset_io.hpp"
#include "trigspline/poly_splines.hpp"

namespace trigspline::cli {

namespace detail_cli {

/// Writes through a temporary in the same directory and renames into
/// place, so a failed run leaves no partial file behind.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("failed while writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename temporary into '" + path.string() + "'");
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Sampling phase used by comparisons: a fixed fraction of a step keeps
/// every sample off the interpolation nodes, where agreement is forced.
inline constexpr double off_node_phase = 0.382;

struct BuildRequest {
    int node_count = 9;
    int indicator = 0;
    std::string kind_text = "v3";
    int order = 3;
    long long alias_blocks = 0; // 0: derive from tolerance
    double tolerance = TruncationPolicy::default_tolerance;
    std::string input;
    std::string format_text = "csv";
};

inline void add_grid_options(CLI::App* cmd, BuildRequest& req) {
    cmd->add_option("--N", req.node_count, "node count (odd, >= 3)")->required();
    cmd->add_option("--I", req.indicator, "grid indicator (0 or 1)")
        ->check(CLI::Range(0, 1));
}

inline void add_build_options(CLI::App* cmd, BuildRequest& req) {
    cmd->add_option("--kind", req.kind_text, "convergence factor family")
        ->check(CLI::IsMember({"v1", "v2", "v3"}));
    cmd->add_option("--r", req.order, "smoothness order (>= 1)");
    auto* blocks = cmd->add_option("--M", req.alias_blocks,
                                   "alias blocks retained in the kernel sums");
    auto* tol = cmd->add_option("--tol", req.tolerance,
                                "tail tolerance used to derive the block count");
    blocks->excludes(tol);
    tol->excludes(blocks);
}

inline void add_input_options(CLI::App* cmd, BuildRequest& req) {
    cmd->add_option("--in", req.input, "sample data file")->required();
    cmd->add_option("--format", req.format_text, "input format")
        ->check(CLI::IsMember({"csv", "json"}));
}

inline SampleSet load_samples(const BuildRequest& req) {
    const GridSpec grid(req.node_count, req.indicator);
    std::ifstream in(req.input, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + req.input + "' for reading");
    }
    const DataFormat format =
        req.format_text == "json" ? DataFormat::Json : DataFormat::Csv;
    return read_samples(in, format, grid);
}

inline TruncationPolicy resolve_policy(const BuildRequest& req, FactorKind kind,
                                       SmoothnessOrder order, const GridSpec& grid) {
    if (req.alias_blocks > 0) {
        return make_policy(req.alias_blocks, kind, order, grid);
    }
    const TruncationPolicy policy = policy_for_tolerance(req.tolerance, kind, order, grid);
    std::cerr << "note: truncation M=" << policy.alias_blocks << ", rigorous tail bound "
              << detail::format_double(policy.tail_bound);
    if (policy.tail_bound > req.tolerance) {
        std::cerr << " (cap reached; requested " << detail::format_double(req.tolerance)
                  << ")";
    }
    std::cerr << "\n";
    return policy;
}

inline TrigSpline build_spline(const BuildRequest& req, const SampleSet& samples) {
    const auto kind = parse_factor_kind(req.kind_text);
    if (!kind) {
        throw DomainError("unknown factor kind '" + req.kind_text + "'");
    }
    const SmoothnessOrder order(req.order);
    const TruncationPolicy policy =
        resolve_policy(req, *kind, order, samples.grid);
    return TrigSpline::build(samples.values, samples.grid, *kind, order, policy);
}

inline std::string series_text(const Series& series) {
    std::ostringstream out;
    write_series(out, series);
    return out.str();
}

inline Series curve_series(const TrigSpline& spline, int count, const char* label) {
    Series series;
    series.labels = {"t", label};
    for (const auto& point : spline.sample(count)) {
        series.rows.push_back({point.t, point.value});
    }
    return series;
}

} // namespace detail_cli

inline int run(const std::vector<std::string>& args) {
    CLI::App app{"interpolating trigonometric splines on uniform periodic grids"};
    app.require_subcommand(1);

    // nodes
    auto* nodes_cmd = app.add_subcommand("nodes", "print the grid node angles");
    detail_cli::BuildRequest nodes_req;
    detail_cli::add_grid_options(nodes_cmd, nodes_req);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit a spline and write its descriptor");
    detail_cli::BuildRequest fit_req;
    std::string fit_out;
    detail_cli::add_grid_options(fit_cmd, fit_req);
    detail_cli::add_input_options(fit_cmd, fit_req);
    detail_cli::add_build_options(fit_cmd, fit_req);
    fit_cmd->add_option("--out", fit_out, "descriptor output path")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a stored spline");
    std::string eval_spline;
    std::vector<double> eval_points;
    int eval_deriv = 0;
    eval_cmd->add_option("--spline", eval_spline, "spline descriptor path")->required();
    eval_cmd->add_option("--t", eval_points, "angles to evaluate at")->required();
    eval_cmd->add_option("--deriv", eval_deriv, "derivative order (0..r-1)");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "write a dense curve CSV");
    detail_cli::BuildRequest sample_req;
    std::string sample_spline;
    std::string sample_out;
    int sample_count = 1024;
    sample_cmd->add_option("--spline", sample_spline, "spline descriptor path");
    auto* sample_in =
        sample_cmd->add_option("--in", sample_req.input, "sample data file (build inline)");
    sample_cmd->add_option("--format", sample_req.format_text, "input format")
        ->check(CLI::IsMember({"csv", "json"}));
    sample_cmd->add_option("--N", sample_req.node_count, "node count (odd, >= 3)");
    sample_cmd->add_option("--I", sample_req.indicator, "grid indicator (0 or 1)")
        ->check(CLI::Range(0, 1));
    detail_cli::add_build_options(sample_cmd, sample_req);
    sample_cmd->add_option("--count", sample_count, "points on [0, 2*pi)");
    sample_cmd->add_option("--out", sample_out, "curve output path")->required();

    // compare
    auto* compare_cmd =
        app.add_subcommand("compare", "max deviation against another build or an oracle");
    detail_cli::BuildRequest compare_req;
    std::string compare_against;
    int compare_count = 1024;
    detail_cli::add_grid_options(compare_cmd, compare_req);
    detail_cli::add_input_options(compare_cmd, compare_req);
    detail_cli::add_build_options(compare_cmd, compare_req);
    compare_cmd
        ->add_option("--against", compare_against,
                     "v1|v2|v3|linear|quadratic|cubic|trigpoly")
        ->required()
        ->check(CLI::IsMember({"v1", "v2", "v3", "linear", "quadratic", "cubic",
                               "trigpoly"}));
    compare_cmd->add_option("--count", compare_count, "comparison sample count");

    // paper-example
    auto* example_cmd = app.add_subcommand(
        "paper-example", "emit the full example dataset for N=9, both grids");
    std::string example_out;
    int example_count = 1024;
    long long example_curve_blocks = 20'000;
    example_cmd->add_option("--out", example_out, "output directory")->required();
    example_cmd->add_option("--count", example_count, "points per curve");
    example_cmd->add_option("--curve-M", example_curve_blocks,
                            "alias blocks for the spline curves");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("trigspline");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(nodes_cmd)) {
            const GridSpec grid(nodes_req.node_count, nodes_req.indicator);
            for (double t : grid.nodes()) {
                std::cout << detail::format_double(t) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(fit_cmd)) {
            const SampleSet samples = detail_cli::load_samples(fit_req);
            const TrigSpline spline = detail_cli::build_spline(fit_req, samples);
            detail_cli::atomic_write(fit_out, write_descriptor(spline) + "\n");
            return 0;
        }

        if (app.got_subcommand(eval_cmd)) {
            const TrigSpline spline =
                read_descriptor(detail_cli::read_file(eval_spline));
            for (double t : eval_points) {
                std::cout << detail::format_double(spline.eval_derivative(t, eval_deriv))
                          << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(sample_cmd)) {
            std::optional<TrigSpline> spline;
            if (!sample_spline.empty()) {
                spline = read_descriptor(detail_cli::read_file(sample_spline));
            } else if (*sample_in) {
                const SampleSet samples = detail_cli::load_samples(sample_req);
                spline = detail_cli::build_spline(sample_req, samples);
            } else {
                throw DomainError("sample needs either --spline or --in");
            }
            const Series series =
                detail_cli::curve_series(*spline, sample_count, "value");
            detail_cli::atomic_write(sample_out, detail_cli::series_text(series));
            return 0;
        }

        if (app.got_subcommand(compare_cmd)) {
            const SampleSet samples = detail_cli::load_samples(compare_req);
            const TrigSpline spline = detail_cli::build_spline(compare_req, samples);
            const auto eval_spline_fn = [&spline](double t) { return spline.eval(t); };
            double deviation = 0.0;
            if (const auto other_kind = parse_factor_kind(compare_against)) {
                // Same data, same order, same truncation; only the factor
                // family differs.
                const TrigSpline other = TrigSpline::build(
                    samples.values, samples.grid, *other_kind, spline.order(),
                    make_policy(spline.policy().alias_blocks, *other_kind,
                                spline.order(), samples.grid));
                deviation = max_deviation(
                    eval_spline_fn, [&other](double t) { return other.eval(t); },
                    compare_count, detail_cli::off_node_phase);
            } else if (compare_against == "trigpoly") {
                const TrigPolyCoeffs poly = fit_trig_poly(samples.values, samples.grid);
                deviation = max_deviation(
                    eval_spline_fn,
                    [&poly](double t) { return eval_trig_poly(poly, t); },
                    compare_count, detail_cli::off_node_phase);
            } else {
                PeriodicPolySpline oracle = [&] {
                    if (compare_against == "linear") {
                        return periodic_linear(samples.values, samples.grid);
                    }
                    if (compare_against == "cubic") {
                        return periodic_cubic(samples.values, samples.grid);
                    }
                    return periodic_quadratic_midpoint(samples.values, samples.grid);
                }();
                deviation = max_deviation(
                    eval_spline_fn, [&oracle](double t) { return oracle.eval(t); },
                    compare_count, detail_cli::off_node_phase);
            }
            std::cout << detail::format_double(deviation) << "\n";
            return 0;
        }

        if (app.got_subcommand(example_cmd)) {
            namespace fs = std::filesystem;
            const std::vector<double> data = {2, 1, 3, 2, 4, 1, 3, 1, 3};
            fs::create_directories(example_out);
            const fs::path dir(example_out);

            for (int indicator : {0, 1}) {
                const GridSpec grid(9, indicator);
                const TrigPolyCoeffs poly = fit_trig_poly(data, grid);
                Series series;
                series.labels = {"t", "value"};
                for (int s = 0; s < example_count; ++s) {
                    const double t = detail::two_pi * s / example_count;
                    series.rows.push_back({t, eval_trig_poly(poly, t)});
                }
                detail_cli::atomic_write(dir / ("trig_poly_I" + std::to_string(indicator) +
                                                ".csv"),
                                         detail_cli::series_text(series));

                for (int r : {1, 2, 3}) {
                    const SmoothnessOrder order(r);
                    const TrigSpline spline = TrigSpline::build(
                        data, grid, FactorKind::V1, order,
                        make_policy(example_curve_blocks, FactorKind::V1, order, grid));
                    const Series curve =
                        detail_cli::curve_series(spline, example_count, "value");
                    detail_cli::atomic_write(dir / ("spline_v1_r" + std::to_string(r) +
                                                    "_I" + std::to_string(indicator) +
                                                    ".csv"),
                                             detail_cli::series_text(curve));
                }

                for (int r : {2, 4, 6}) {
                    const SmoothnessOrder order(r);
                    const TrigSpline with_v1 =
                        TrigSpline::build(data, grid, FactorKind::V1, order);
                    const TrigSpline with_v3 =
                        TrigSpline::build(data, grid, FactorKind::V3, order);
                    const auto a = with_v1.sample(example_count);
                    const auto b = with_v3.sample(example_count);
                    Series series_dev;
                    series_dev.labels = {"t", "deviation"};
                    for (std::size_t s = 0; s < a.size(); ++s) {
                        series_dev.rows.push_back({a[s].t, a[s].value - b[s].value});
                    }
                    detail_cli::atomic_write(dir / ("deviation_v1_v3_r" +
                                                    std::to_string(r) + "_I" +
                                                    std::to_string(indicator) + ".csv"),
                                             detail_cli::series_text(series_dev));
                }
            }
            return 0;
        }

        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace trigspline::cli
