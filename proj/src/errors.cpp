#include "bstop/errors.hpp"

namespace bstop {

const char* errc_name(errc code) {
    switch (code) {
        case errc::out_of_range: return "OutOfRange";
        case errc::negative_tail: return "NegativeTail";
        case errc::empty_profile: return "Empty";
        case errc::degenerate_trial: return "DegenerateTrial";
        case errc::param_out_of_range: return "ParamOutOfRange";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::singular_scaling: return "SingularScaling";
        case errc::order_too_large: return "OrderTooLarge";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::bad_range: return "BadRange";
        case errc::bad_decomposition: return "BadDecomposition";
        case errc::bad_w: return "BadW";
        case errc::internal_inconsistency: return "InternalInconsistency";
        case errc::parse_error: return "ParseError";
    }
    return "Error";
}

void raise(errc code, const std::string& what) {
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace bstop
