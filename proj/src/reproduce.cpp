#include "mdtb/reproduce.hpp"

#include "mdtb/checks.hpp"
#include "mdtb/ect_space.hpp"
#include "mdtb/extraction.hpp"
#include "mdtb/multi_patch.hpp"
#include "mdtb/special_spaces.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace mdtb {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> grid(static_cast<size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int k = 0; k < n; ++k) {
        grid[static_cast<size_t>(k)] = k == n - 1 ? b : a + k * h;
    }
    return grid;
}

} // namespace

MDTSpaceSpec showcase_space() {
    MDTSpaceSpec spec;
    spec.breaks = {0.0, 1.0, 2.0, 3.0, 4.0};
    spec.smoothness = {-1, 2, 3, 3, -1};
    spec.patches = {
        std::make_shared<PolyPatch>(3, 0.0, 1.0),
        std::make_shared<GenPolyPatch>(PatchKind::gexp, 3.0, 4, 1.0, 2.0),
        std::make_shared<GenPolyPatch>(PatchKind::gtrig, 1.5, 4, 2.0, 3.0),
        std::make_shared<TchebPatch>(
            std::vector<Root>{{0.0, 0.0, 3}, {1.0, 0.0, 1}, {-1.0, 0.0, 1}, {0.0, 2.0, 1}},
            3.0, 4.0),
    };
    return validate_space(std::move(spec));
}

MDTSpaceSpec rounded_square_space(double l) {
    MDTSpaceSpec spec;
    spec.breaks = {0.0,
                   kPi / 2,
                   l + kPi / 2,
                   l + kPi,
                   2 * l + kPi,
                   2 * l + 3 * kPi / 2,
                   3 * l + 3 * kPi / 2,
                   3 * l + 2 * kPi,
                   4 * l + 2 * kPi};
    spec.smoothness = {-1, 1, 1, 1, 1, 1, 1, 1, -1};
    for (int i = 0; i < 8; ++i) {
        const double a = spec.breaks[static_cast<size_t>(i)];
        const double b = spec.breaks[static_cast<size_t>(i) + 1];
        if (i % 2 == 0) {
            spec.patches.push_back(std::make_shared<PTypePatch>(PatchKind::ptrig, 1.0, 2, a, b));
        } else {
            spec.patches.push_back(std::make_shared<PolyPatch>(1, a, b));
        }
    }
    return validate_space(std::move(spec));
}

Matrix rounded_square_control_points() {
    Matrix p(4, 2);
    p << 1, 1,
        -1, 1,
        -1, -1,
        1, -1;
    return p;
}

Eigen::Vector2d rounded_square_point(double l, double x) {
    const double big = 1.0 / (2.0 + l);
    if (x < kPi / 2) {
        return {-big * (2 * std::sin(x) + l), big * (2 * std::cos(x) + l)};
    }
    if (x < l + kPi / 2) {
        return {-1.0, -big * (2 * x - l - kPi)};
    }
    if (x < l + kPi) {
        return {-big * (2 * std::sin(x - l) + l), big * (2 * std::cos(x - l) - l)};
    }
    if (x < 2 * l + kPi) {
        return {big * (2 * x - 3 * l - 2 * kPi), -1.0};
    }
    if (x < 2 * l + 3 * kPi / 2) {
        return {-big * (2 * std::sin(x - 2 * l) - l), big * (2 * std::cos(x - 2 * l) - l)};
    }
    if (x < 3 * l + 3 * kPi / 2) {
        return {1.0, big * (2 * x - 5 * l - 3 * kPi)};
    }
    if (x < 3 * l + 2 * kPi) {
        return {-big * (2 * std::sin(x - 3 * l) - l), big * (2 * std::cos(x - 3 * l) + l)};
    }
    return {-big * (2 * x - 7 * l - 4 * kPi), 1.0};
}

RootSpec clustered_root_spec(int p) {
    const double a0 = 1.0 / (6.0 * kPi);
    const double a1 = 1.0 / (3.0 * kPi);
    return validate_root_spec(
        {{0.0, 0.0, p - 5}, {0.0, 1.0, 1}, {a0, 0.0, 1}, {a1, 0.0, 1}, {a0, 1.0, 1}},
        11.0 * kPi / 2.0, 49.0 * kPi / 8.0);
}

namespace {

std::string write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    return path.string();
}

std::string write_mdtb_samples(const std::filesystem::path& path, const MDTSpaceSpec& spec,
                               const ExtractionMatrix& h, int grid_size) {
    BasisSample sample;
    sample.points = uniform_grid(spec.a(), spec.b(), grid_size);
    sample.values = mdtb_eval_all(spec, h, sample.points, 0);
    sample.interval_index.resize(sample.points.size());
    for (size_t k = 0; k < sample.points.size(); ++k) {
        sample.interval_index[k] = spec.owning_interval(sample.points[k]);
    }
    std::ofstream out(path);
    write_sample_csv(out, sample, 0);
    return path.string();
}

ReproduceResult reproduce_basis_a(const std::filesystem::path& dir) {
    ReproduceResult result;
    const MDTSpaceSpec spec = showcase_space();
    const ExtractionMatrix h = extraction(spec);
    const ExtractionMatrix hp = extraction_periodic(spec, 2);
    result.files.push_back(write_mdtb_samples(dir / "basis_A_nonperiodic.csv", spec, h, 501));
    result.files.push_back(write_mdtb_samples(dir / "basis_A_periodic.csv", spec, hp, 501));
    result.files.push_back(
        write_text(dir / "basis_A_knots.json", knot_vectors_to_json(knot_vectors(spec)).dump(2)));
    const CheckReport report = check_partition_of_unity(spec, h);
    result.files.push_back(
        write_text(dir / "basis_A_report.json", check_report_to_json(report).dump(2)));
    result.summary = {{"dimension", dimension(spec)},
                      {"dimension_periodic", dimension_periodic(spec, 2)},
                      {"report", check_report_to_json(report)}};
    return result;
}

ReproduceResult reproduce_basis_b(const std::filesystem::path& dir) {
    ReproduceResult result;
    Json curves = Json::array();
    for (int s = -2; s <= 1; ++s) {
        const double l = std::pow(4.0, s);
        const MDTSpaceSpec spec = rounded_square_space(l);
        const ExtractionMatrix h = extraction_periodic(spec, 1);
        const std::vector<double> params = uniform_grid(spec.a(), spec.b(), 200);
        const Matrix curve = curve_eval(spec, h, rounded_square_control_points(), params);
        const auto path = dir / ("basis_B_curve_s" + std::to_string(s) + ".csv");
        std::ofstream out(path);
        write_curve_csv(out, params, curve);
        result.files.push_back(path.string());
        curves.push_back({{"s", s},
                          {"l", l},
                          {"dimension", dimension_periodic(spec, 1)},
                          {"corner_radius", 2.0 / (2.0 + l)}});
    }
    result.summary = {{"curves", std::move(curves)}};
    return result;
}

ReproduceResult reproduce_instability_a(const std::filesystem::path& dir) {
    ReproduceResult result;
    Json reports = Json::array();
    for (int p : {9, 10}) {
        const TchebPatch patch(clustered_root_spec(p));
        const CheckReport report = check_partition_of_unity(patch, 501);
        const BasisSample sample = sample_basis(patch, 501);
        const auto path = dir / ("instability_A_p" + std::to_string(p) + ".csv");
        std::ofstream out(path);
        write_sample_csv(out, sample, 0, "B");
        result.files.push_back(path.string());
        reports.push_back({{"p", p}, {"report", check_report_to_json(report)}});
    }
    result.summary = {{"reports", std::move(reports)}};
    return result;
}

ReproduceResult reproduce_instability_b(const std::filesystem::path& dir) {
    ReproduceResult result;
    const GenPolyPatch specialized(PatchKind::gtrig, 1.0 / 3.0, 10, 0.0, 1.0);
    const TchebPatch generic(
        std::vector<Root>{{0.0, 0.0, 9}, {0.0, 1.0 / 3.0, 1}}, 0.0, 1.0);
    Json reports = Json::array();
    for (const LocalPatch* patch :
         {static_cast<const LocalPatch*>(&specialized), static_cast<const LocalPatch*>(&generic)}) {
        const CheckReport report = check_partition_of_unity(*patch, 501);
        const BasisSample sample = sample_basis(*patch, 501);
        const auto path =
            dir / (std::string("instability_B_") + to_string(patch->kind()) + ".csv");
        std::ofstream out(path);
        write_sample_csv(out, sample, 0, "B");
        result.files.push_back(path.string());
        reports.push_back(
            {{"class", to_string(patch->kind())}, {"report", check_report_to_json(report)}});
    }
    result.summary = {{"reports", std::move(reports)}};
    return result;
}

PatchFamily gtrig_family(int p) {
    return [p](double x0, double x1) -> PatchPtr {
        return std::make_shared<GenPolyPatch>(PatchKind::gtrig, 1.0, p, x0, x1);
    };
}

PatchFamily mixed_trig_family(double beta) {
    return [beta](double x0, double x1) -> PatchPtr {
        return std::make_shared<TchebPatch>(
            std::vector<Root>{{0.0, 0.0, 1}, {0.0, 1.0, 1}, {0.0, 2.0, 1}, {0.0, beta, 1}}, x0,
            x1);
    };
}

ReproduceResult reproduce_critical_length_a(const std::filesystem::path& dir) {
    ReproduceResult result;
    Json estimates = Json::array();
    for (int p = 2; p <= 10; ++p) {
        CriticalLengthEstimate est = critical_length_autoscan(gtrig_family(p), 14.5);
        est.family = "gtrig p=" + std::to_string(p) + " shape=1";
        estimates.push_back(critical_length_to_json(est));
    }
    result.summary = {{"estimates", estimates}};
    result.files.push_back(
        write_text(dir / "critical_length_A.json", result.summary.dump(2)));
    return result;
}

ReproduceResult reproduce_critical_length_b(const std::filesystem::path& dir) {
    ReproduceResult result;
    // The generic class is noisy on very small intervals, so the coarse scan
    // starts at 0.5 rather than at the default step.
    CriticalLengthEstimate est = critical_length_autoscan(mixed_trig_family(3.0), 4.0, 0.5);
    est.family = "tcheb (0,1),(0,2),(0,3) with zero root";
    result.summary = {{"estimate", critical_length_to_json(est)}};
    result.files.push_back(
        write_text(dir / "critical_length_B.json", result.summary.dump(2)));
    return result;
}

ReproduceResult reproduce_critical_length_c(const std::filesystem::path& dir) {
    ReproduceResult result;
    Json estimates = Json::array();
    for (int r : {0, 1}) {
        CriticalLengthEstimate est =
            critical_length_autoscan(mixed_trig_family(3.0), 4.0, 0.5, 0.001, -1e-8, 501, 3, r);
        est.family = "mdtb m=3 r=" + std::to_string(r) + " of tcheb beta=3";
        estimates.push_back(critical_length_to_json(est));
    }
    result.summary = {{"estimates", estimates}};
    result.files.push_back(
        write_text(dir / "critical_length_C.json", result.summary.dump(2)));
    return result;
}

} // namespace

ReproduceResult reproduce(const std::string& example_id, const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    if (example_id == "basis_A") return reproduce_basis_a(dir);
    if (example_id == "basis_B") return reproduce_basis_b(dir);
    if (example_id == "instability_A") return reproduce_instability_a(dir);
    if (example_id == "instability_B") return reproduce_instability_b(dir);
    if (example_id == "critical_length_A") return reproduce_critical_length_a(dir);
    if (example_id == "critical_length_B") return reproduce_critical_length_b(dir);
    if (example_id == "critical_length_C") return reproduce_critical_length_c(dir);
    throw UnknownExample("unknown example id: " + example_id);
}

} // namespace mdtb
