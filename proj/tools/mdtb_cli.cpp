#include "mdtb/checks.hpp"
#include "mdtb/ect_space.hpp"
#include "mdtb/extraction.hpp"
#include "mdtb/io.hpp"
#include "mdtb/multi_patch.hpp"
#include "mdtb/reproduce.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using mdtb::ExtractionMatrix;
using mdtb::Json;
using mdtb::MDTSpaceSpec;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitWarning = 2;

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw mdtb::InvalidSpec("cannot open config file: " + path);
    }
    return Json::parse(in);
}

std::filesystem::path ensure_out(const std::string& out) {
    std::filesystem::path dir = out.empty() ? std::filesystem::path(".") : std::filesystem::path(out);
    std::filesystem::create_directories(dir);
    return dir;
}

ExtractionMatrix build_extraction(const mdtb::SpaceConfig& config) {
    if (config.periodic_smoothness) {
        return mdtb::extraction_periodic(config.spec, *config.periodic_smoothness);
    }
    return mdtb::extraction(config.spec);
}

std::vector<double> grid_from_config(const Json& j, double a, double b) {
    if (j.contains("points")) {
        return j["points"].get<std::vector<double>>();
    }
    const int n = j.value("grid", 501);
    std::vector<double> grid(static_cast<size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int k = 0; k < n; ++k) {
        grid[static_cast<size_t>(k)] = k == n - 1 ? b : a + k * h;
    }
    return grid;
}

int warnings_exit(const std::vector<mdtb::Warning>& warnings) {
    if (warnings.empty()) {
        return kExitOk;
    }
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w.context << " (rcond " << w.rcond << ")\n";
    }
    return kExitWarning;
}

std::vector<mdtb::Warning> space_warnings(const MDTSpaceSpec& spec) {
    std::vector<mdtb::Warning> all;
    for (const auto& patch : spec.patches) {
        const auto& w = patch->warnings();
        all.insert(all.end(), w.begin(), w.end());
    }
    return all;
}

int cmd_space(const std::string& config_path, const std::string& out, bool show) {
    const mdtb::SpaceConfig config = mdtb::space_from_json(load_config(config_path));
    Json info;
    info["dimension"] = mdtb::dimension(config.spec);
    info["stacked_dimension"] = config.spec.stacked_dimension();
    info["intervals"] = config.spec.interval_count();
    if (config.periodic_smoothness) {
        info["dimension_periodic"] =
            mdtb::dimension_periodic(config.spec, *config.periodic_smoothness);
    }
    if (show) {
        info["knots"] = mdtb::knot_vectors_to_json(mdtb::knot_vectors(config.spec));
        info["space"] = mdtb::space_to_json(config);
    }
    std::cout << info.dump(2) << '\n';
    if (!out.empty()) {
        std::ofstream f(ensure_out(out) / "space.json");
        f << info.dump(2) << '\n';
    }
    return warnings_exit(space_warnings(config.spec));
}

int cmd_eval(const std::string& config_path, const std::string& out) {
    const Json j = load_config(config_path);
    const mdtb::SpaceConfig config = mdtb::space_from_json(j.at("space"));
    const ExtractionMatrix h = build_extraction(config);
    const std::vector<double> grid = grid_from_config(j, config.spec.a(), config.spec.b());
    const int max_deriv = j.value("max_deriv", 0);
    mdtb::BasisSample sample;
    sample.points = grid;
    sample.values = mdtb::mdtb_eval_all(config.spec, h, grid, max_deriv);
    sample.interval_index.resize(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) {
        sample.interval_index[k] = config.spec.owning_interval(grid[k]);
    }
    const auto dir = ensure_out(out);
    for (int d = 0; d <= max_deriv; ++d) {
        std::ofstream f(dir / ("basis_d" + std::to_string(d) + ".csv"));
        mdtb::write_sample_csv(f, sample, d);
    }
    std::cout << "wrote " << (max_deriv + 1) << " sample file(s) to " << dir.string() << '\n';
    return warnings_exit(space_warnings(config.spec));
}

int cmd_extract(const std::string& config_path, const std::string& out) {
    const mdtb::SpaceConfig config = mdtb::space_from_json(load_config(config_path));
    const ExtractionMatrix h = build_extraction(config);
    const auto dir = ensure_out(out);
    {
        std::ofstream f(dir / "extraction.mtx");
        mdtb::write_matrix_market(f, h);
    }
    Json info{{"rows", h.rows()},
              {"cols", h.cols()},
              {"max_column_sum_deviation",
               (h.column_sums().array() - 1.0).abs().maxCoeff()}};
    std::cout << info.dump(2) << '\n';
    return warnings_exit(space_warnings(config.spec));
}

int cmd_curve(const std::string& config_path, const std::string& out) {
    const Json j = load_config(config_path);
    const mdtb::SpaceConfig config = mdtb::space_from_json(j.at("space"));
    const ExtractionMatrix h = build_extraction(config);
    const auto rows = j.at("control_points").get<std::vector<std::vector<double>>>();
    if (rows.empty()) {
        throw mdtb::InvalidSpec("control_points must be non-empty");
    }
    mdtb::Matrix control(rows.size(), rows.front().size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) {
            throw mdtb::InvalidSpec("control points must share one dimension");
        }
        for (size_t c = 0; c < rows[r].size(); ++c) {
            control(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    const std::vector<double> params = grid_from_config(j, config.spec.a(), config.spec.b());
    const mdtb::Matrix points = mdtb::curve_eval(config.spec, h, control, params);
    const auto dir = ensure_out(out);
    std::ofstream f(dir / "curve.csv");
    mdtb::write_curve_csv(f, params, points);
    std::cout << "wrote curve.csv to " << dir.string() << '\n';
    return warnings_exit(space_warnings(config.spec));
}

int cmd_check_pou(const std::string& config_path, const std::string& out) {
    const Json j = load_config(config_path);
    const mdtb::SpaceConfig config =
        mdtb::space_from_json(j.contains("space") ? j.at("space") : j);
    const ExtractionMatrix h = build_extraction(config);
    const int grid = j.value("grid", 501);
    const mdtb::CheckReport report = mdtb::check_partition_of_unity(config.spec, h, grid);
    const Json report_json = mdtb::check_report_to_json(report);
    std::cout << report_json.dump(2) << '\n';
    if (!out.empty()) {
        std::ofstream f(ensure_out(out) / "check_pou.json");
        f << report_json.dump(2) << '\n';
    }
    return warnings_exit(report.warnings);
}

int cmd_critical_length(const std::string& config_path, const std::string& out) {
    const Json j = load_config(config_path);
    const Json patch_template = j.at("patch");
    const mdtb::PatchFamily family = [patch_template](double a, double b) -> mdtb::PatchPtr {
        Json pj = patch_template;
        pj["x0"] = a;
        pj["x1"] = b;
        return mdtb::patch_from_json(pj);
    };
    mdtb::CriticalLengthEstimate est = mdtb::critical_length_autoscan(
        family, j.at("len_max").get<double>(), j.value("coarse_step", 0.1),
        j.value("fine_step", 0.001), j.value("neg_tol", -1e-8), j.value("grid", 501),
        j.value("m", 1), j.value("r", 0));
    est.family = patch_template.dump();
    const Json est_json = mdtb::critical_length_to_json(est);
    std::cout << est_json.dump(2) << '\n';
    if (!out.empty()) {
        std::ofstream f(ensure_out(out) / "critical_length.json");
        f << est_json.dump(2) << '\n';
    }
    return warnings_exit(est.warnings);
}

int cmd_reproduce(const std::string& id, const std::string& config_path,
                  const std::string& out) {
    std::string example = id;
    if (example.empty() && !config_path.empty()) {
        example = load_config(config_path).at("id").get<std::string>();
    }
    const mdtb::ReproduceResult result =
        mdtb::reproduce(example, out.empty() ? "." : out);
    Json info{{"id", example}, {"files", result.files}, {"summary", result.summary}};
    std::cout << info.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-degree Tchebycheffian B-spline toolbox"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::string space_action = "validate";
    std::string example_id;

    auto add_common = [&](CLI::App* cmd, bool config_required = true) {
        cmd->add_option("--config", config, "JSON config file")->required(config_required);
        cmd->add_option("--out", out, "output directory");
    };

    CLI::App* space = app.add_subcommand("space", "validate or show a space config");
    space->add_option("action", space_action, "validate | show")
        ->check(CLI::IsMember({"validate", "show"}));
    add_common(space);

    add_common(app.add_subcommand("eval", "sample the basis to CSV"));
    add_common(app.add_subcommand("extract", "write the extraction matrix"));
    add_common(app.add_subcommand("curve", "evaluate a spline curve to CSV"));
    add_common(app.add_subcommand("check-pou", "partition-of-unity report"));
    add_common(app.add_subcommand("critical-length", "scan for the critical length"));
    CLI::App* rep = app.add_subcommand("reproduce", "rebuild a shipped showcase dataset");
    rep->add_option("id", example_id, "dataset id");
    add_common(rep, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (space->parsed()) {
            return cmd_space(config, out, space_action == "show");
        }
        if (app.get_subcommand("eval")->parsed()) return cmd_eval(config, out);
        if (app.get_subcommand("extract")->parsed()) return cmd_extract(config, out);
        if (app.get_subcommand("curve")->parsed()) return cmd_curve(config, out);
        if (app.get_subcommand("check-pou")->parsed()) return cmd_check_pou(config, out);
        if (app.get_subcommand("critical-length")->parsed()) {
            return cmd_critical_length(config, out);
        }
        if (rep->parsed()) return cmd_reproduce(example_id, config, out);
    } catch (const mdtb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}
