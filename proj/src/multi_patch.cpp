#include "mdtb/multi_patch.hpp"

namespace mdtb {

MultiPatch::MultiPatch(std::shared_ptr<const MDTSpaceSpec> inner, ExtractionMatrix h)
    : LocalPatch(PatchKind::multi, inner->a(), inner->b(),
                 h.rows()),
      inner_(std::move(inner)), h_(std::move(h)) {
    if (h_.cols() != inner_->stacked_dimension() || h_.rows() != mdtb::dimension(*inner_)) {
        throw DimensionMismatch("extraction matrix does not match the inner space");
    }
}

MultiPatch::MultiPatch(std::shared_ptr<const MDTSpaceSpec> inner)
    : MultiPatch(inner, extraction(*inner)) {}

MultiPatch::MultiPatch(MDTSpaceSpec inner)
    : MultiPatch(std::make_shared<const MDTSpaceSpec>(validate_space(std::move(inner)))) {}

EvalStack MultiPatch::eval_impl(std::span<const double> points, int max_deriv,
                                Exec exec) const {
    return mdtb_eval_all(*inner_, h_, points, max_deriv, exec);
}

Matrix MultiPatch::diffend_impl(Endpoint end, int max_deriv) const {
    return mdtb_diffend_at_break(*inner_, h_,
                                 end == Endpoint::left ? 0 : inner_->interval_count(),
                                 end == Endpoint::left ? Endpoint::right : Endpoint::left,
                                 max_deriv);
}

} // namespace mdtb
