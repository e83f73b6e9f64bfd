#pragma once

#include <stdexcept>
#include <string>

namespace bstop {

enum class errc {
    out_of_range,
    negative_tail,
    empty_profile,
    degenerate_trial,
    param_out_of_range,
    dimension_mismatch,
    singular_scaling,
    order_too_large,
    index_out_of_range,
    bad_range,
    bad_decomposition,
    bad_w,
    internal_inconsistency,
    parse_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] void raise(errc code, const std::string& what);

}  // namespace bstop
