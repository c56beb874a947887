#include "mdtb/io.hpp"

#include "mdtb/ect_space.hpp"
#include "mdtb/multi_patch.hpp"
#include "mdtb/special_spaces.hpp"

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace mdtb {

namespace {

PatchKind kind_from_string(const std::string& s) {
    if (s == "poly") return PatchKind::poly;
    if (s == "bspline") return PatchKind::bspline;
    if (s == "pexp") return PatchKind::pexp;
    if (s == "ptrig") return PatchKind::ptrig;
    if (s == "gexp") return PatchKind::gexp;
    if (s == "gtrig") return PatchKind::gtrig;
    if (s == "tcheb") return PatchKind::tcheb;
    if (s == "multi") return PatchKind::multi;
    throw InvalidSpec("unknown patch kind: " + s);
}

std::string format_full(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

} // namespace

RootSpec root_spec_from_json(const Json& j) {
    std::vector<Root> roots;
    for (const Json& r : j.at("roots")) {
        if (r.is_array()) {
            if (r.size() != 3) {
                throw InvalidSpec("a root triple must be [alpha, beta, mu]");
            }
            roots.push_back(Root{r[0].get<double>(), r[1].get<double>(), r[2].get<int>()});
        } else {
            roots.push_back(Root{r.at("alpha").get<double>(), r.at("beta").get<double>(),
                                 r.at("mu").get<int>()});
        }
    }
    return validate_root_spec(std::move(roots), j.at("x0").get<double>(),
                              j.at("x1").get<double>());
}

Json root_spec_to_json(const RootSpec& spec) {
    Json roots = Json::array();
    for (const Root& r : spec.roots) {
        roots.push_back(Json::array({r.alpha, r.beta, r.mu}));
    }
    return Json{{"roots", std::move(roots)}, {"x0", spec.x0}, {"x1", spec.x1}};
}

PatchPtr patch_from_json(const Json& j) {
    const PatchKind kind = kind_from_string(j.at("kind").get<std::string>());
    switch (kind) {
    case PatchKind::poly:
        return std::make_shared<PolyPatch>(j.at("p").get<int>(), j.at("x0").get<double>(),
                                           j.at("x1").get<double>());
    case PatchKind::bspline:
        return std::make_shared<BSplinePatch>(j.at("p").get<int>(),
                                              j.at("breaks").get<std::vector<double>>(),
                                              j.at("smoothness").get<std::vector<int>>());
    case PatchKind::pexp:
    case PatchKind::ptrig:
        return std::make_shared<PTypePatch>(kind, j.at("shape").get<double>(),
                                            j.at("p").get<int>(), j.at("x0").get<double>(),
                                            j.at("x1").get<double>());
    case PatchKind::gexp:
    case PatchKind::gtrig: {
        GenPolyParams params;
        params.p = j.at("p").get<int>();
        params.shape = j.at("shape").get<double>();
        if (j.contains("switch_threshold")) {
            params.switch_threshold = j["switch_threshold"].get<double>();
        }
        if (j.contains("taylor_cap")) {
            params.taylor_cap = j["taylor_cap"].get<int>();
        }
        return std::make_shared<GenPolyPatch>(kind, params, j.at("x0").get<double>(),
                                              j.at("x1").get<double>());
    }
    case PatchKind::tcheb:
        return std::make_shared<TchebPatch>(root_spec_from_json(j));
    case PatchKind::multi: {
        SpaceConfig config = space_from_json(j.at("space"));
        if (config.periodic_smoothness) {
            throw InvalidSpec("nested spaces cannot be periodic");
        }
        return std::make_shared<MultiPatch>(std::move(config.spec));
    }
    }
    throw InvalidSpec("unknown patch kind");
}

Json patch_to_json(const LocalPatch& patch) {
    Json j{{"kind", to_string(patch.kind())}, {"x0", patch.x0()}, {"x1", patch.x1()}};
    switch (patch.kind()) {
    case PatchKind::poly:
        j["p"] = patch.degree();
        break;
    case PatchKind::bspline: {
        const auto& bs = dynamic_cast<const BSplinePatch&>(patch);
        j["p"] = bs.spline_degree();
        j["breaks"] = bs.breaks();
        std::vector<int> smoothness;
        const std::vector<double>& breaks = bs.breaks();
        for (size_t i = 1; i + 1 < breaks.size(); ++i) {
            int mult = 0;
            for (double t : bs.knots()) {
                if (t == breaks[i]) ++mult;
            }
            smoothness.push_back(bs.spline_degree() - mult);
        }
        j["smoothness"] = smoothness;
        j.erase("x0");
        j.erase("x1");
        break;
    }
    case PatchKind::pexp:
    case PatchKind::ptrig: {
        const auto& pt = dynamic_cast<const PTypePatch&>(patch);
        j["p"] = pt.degree();
        j["shape"] = pt.shape();
        break;
    }
    case PatchKind::gexp:
    case PatchKind::gtrig: {
        const auto& gp = dynamic_cast<const GenPolyPatch&>(patch);
        j["p"] = gp.params().p;
        j["shape"] = gp.params().shape;
        j["switch_threshold"] = gp.params().switch_threshold;
        j["taylor_cap"] = gp.params().taylor_cap;
        break;
    }
    case PatchKind::tcheb: {
        const auto& tp = dynamic_cast<const TchebPatch&>(patch);
        const Json rs = root_spec_to_json(tp.root_spec());
        j["roots"] = rs.at("roots");
        break;
    }
    case PatchKind::multi: {
        const auto& mp = dynamic_cast<const MultiPatch&>(patch);
        SpaceConfig config;
        config.spec = mp.inner();
        j["space"] = space_to_json(config);
        j.erase("x0");
        j.erase("x1");
        break;
    }
    }
    return j;
}

SpaceConfig space_from_json(const Json& j) {
    SpaceConfig config;
    config.spec.breaks = j.at("breaks").get<std::vector<double>>();
    std::vector<int> smoothness = j.at("smoothness").get<std::vector<int>>();
    const size_t nbreaks = config.spec.breaks.size();
    if (smoothness.size() + 2 == nbreaks) {
        smoothness.insert(smoothness.begin(), -1);
        smoothness.push_back(-1);
    } else if (smoothness.size() != nbreaks) {
        throw InvalidSpec("smoothness must list interior values or one value per break");
    }
    config.spec.smoothness = std::move(smoothness);
    for (const Json& pj : j.at("patches")) {
        config.spec.patches.push_back(patch_from_json(pj));
    }
    config.spec = validate_space(std::move(config.spec));
    if (j.contains("periodic")) {
        config.periodic_smoothness = j["periodic"].at("r").get<int>();
    }
    return config;
}

Json space_to_json(const SpaceConfig& config) {
    Json j;
    j["breaks"] = config.spec.breaks;
    j["smoothness"] = config.spec.smoothness;
    Json patches = Json::array();
    for (const PatchPtr& p : config.spec.patches) {
        patches.push_back(patch_to_json(*p));
    }
    j["patches"] = std::move(patches);
    if (config.periodic_smoothness) {
        j["periodic"] = Json{{"r", *config.periodic_smoothness}};
    }
    return j;
}

Json check_report_to_json(const CheckReport& report) {
    Json warnings = Json::array();
    for (const Warning& w : report.warnings) {
        warnings.push_back(Json{{"context", w.context}, {"rcond", w.rcond}});
    }
    return Json{{"max_pou_deviation", report.max_pou_deviation},
                {"min_basis_value", report.min_basis_value},
                {"h_column_sum_deviation", report.h_column_sum_deviation},
                {"warnings", std::move(warnings)}};
}

Json critical_length_to_json(const CriticalLengthEstimate& estimate) {
    Json warnings = Json::array();
    for (const Warning& w : estimate.warnings) {
        warnings.push_back(Json{{"context", w.context}, {"rcond", w.rcond}});
    }
    Json j{{"family", estimate.family},
           {"grid", estimate.grid},
           {"neg_tol", estimate.neg_tol},
           {"reliable", estimate.reliable},
           {"warnings", std::move(warnings)}};
    if (estimate.estimate) {
        j["estimate"] = *estimate.estimate;
    } else {
        j["estimate"] = nullptr;
    }
    return j;
}

Json knot_vectors_to_json(const KnotVectors& kv) {
    return Json{{"u", kv.u}, {"v", kv.v}};
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out << ',';
            }
            out << format_full(m(r, c));
        }
        out << '\n';
    }
}

void write_sample_csv(std::ostream& out, const BasisSample& sample, int level,
                      const std::string& name_prefix) {
    const Matrix& values = sample.values.at(static_cast<size_t>(level));
    out << "x,interval";
    for (Eigen::Index j = 0; j < values.rows(); ++j) {
        out << ',' << name_prefix << '_' << (j + 1);
    }
    out << '\n';
    for (size_t k = 0; k < sample.points.size(); ++k) {
        out << format_full(sample.points[k]) << ',' << sample.interval_index[k];
        for (Eigen::Index j = 0; j < values.rows(); ++j) {
            out << ',' << format_full(values(j, static_cast<Eigen::Index>(k)));
        }
        out << '\n';
    }
}

void write_curve_csv(std::ostream& out, std::span<const double> params, const Matrix& points) {
    out << 'x';
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
        out << ",c_" << (c + 1);
    }
    out << '\n';
    for (size_t k = 0; k < params.size(); ++k) {
        out << format_full(params[k]);
        for (Eigen::Index c = 0; c < points.cols(); ++c) {
            out << ',' << format_full(points(static_cast<Eigen::Index>(k), c));
        }
        out << '\n';
    }
}

void write_matrix_market(std::ostream& out, const ExtractionMatrix& h) {
    const auto triplets = h.triplets();
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << h.rows() << ' ' << h.cols() << ' ' << triplets.size() << '\n';
    for (const auto& t : triplets) {
        out << (t.row + 1) << ' ' << (t.col + 1) << ' ' << format_full(t.value) << '\n';
    }
}

} // namespace mdtb
