#pragma once

#include "mdtb/extraction.hpp"
#include "mdtb/local_patch.hpp"
#include "mdtb/mdtb_space.hpp"

#include <memory>

namespace mdtb {

/// A finished multi-degree space embedded as a single local patch of
/// dimension n on [a, b], so that spline spaces can be nested into larger
/// multi-degree spaces without recomputation.
class MultiPatch : public LocalPatch {
public:
    /// Non-periodic extraction only.
    MultiPatch(std::shared_ptr<const MDTSpaceSpec> inner, ExtractionMatrix h);
    /// Computes the extraction matrix of an already validated space.
    explicit MultiPatch(std::shared_ptr<const MDTSpaceSpec> inner);
    /// Convenience: validates the spec and computes the extraction matrix.
    explicit MultiPatch(MDTSpaceSpec inner);

    const MDTSpaceSpec& inner() const { return *inner_; }
    const ExtractionMatrix& extraction_matrix() const { return h_; }
    std::vector<double> breaks() const override { return inner_->breaks; }

protected:
    EvalStack eval_impl(std::span<const double> points, int max_deriv,
                        Exec exec) const override;
    Matrix diffend_impl(Endpoint end, int max_deriv) const override;

private:
    std::shared_ptr<const MDTSpaceSpec> inner_;
    ExtractionMatrix h_;
};

} // namespace mdtb
