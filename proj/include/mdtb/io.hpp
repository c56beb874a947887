#pragma once

#include "mdtb/checks.hpp"
#include "mdtb/extraction.hpp"
#include "mdtb/local_patch.hpp"
#include "mdtb/mdtb_space.hpp"
#include "mdtb/root_spec.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace mdtb {

using Json = nlohmann::json;

/// JSON descriptor -> local patch. Accepted kinds: poly, bspline, pexp,
/// ptrig, gexp, gtrig, tcheb, multi (nested space config).
PatchPtr patch_from_json(const Json& j);
Json patch_to_json(const LocalPatch& patch);

Json root_spec_to_json(const RootSpec& spec);
RootSpec root_spec_from_json(const Json& j);

/// Space config: breaks, smoothness (interior list or full vector),
/// optional {"periodic": {"r": k}}, patches.
struct SpaceConfig {
    MDTSpaceSpec spec;
    std::optional<int> periodic_smoothness;
};
SpaceConfig space_from_json(const Json& j);
Json space_to_json(const SpaceConfig& config);

Json check_report_to_json(const CheckReport& report);
Json critical_length_to_json(const CriticalLengthEstimate& estimate);
Json knot_vectors_to_json(const KnotVectors& kv);

/// Dense CSV, row-major, full round-trip precision.
void write_matrix_csv(std::ostream& out, const Matrix& m);

/// Basis samples: header "x,interval,N_1..N_n"; one call per derivative level.
void write_sample_csv(std::ostream& out, const BasisSample& sample, int level,
                      const std::string& name_prefix = "N");

/// Curve samples: header "x,c_1..c_d".
void write_curve_csv(std::ostream& out, std::span<const double> params, const Matrix& points);

/// Matrix Market coordinate format.
void write_matrix_market(std::ostream& out, const ExtractionMatrix& h);

} // namespace mdtb
