#pragma once

#include <stdexcept>
#include <string>

namespace medax {

// Failure categories; the CLI maps these onto exit codes.
enum class errc {
    bad_input,          // malformed config / violated precondition
    empty_set,
    not_on_set,
    not_back_projection,
    bad_family,
    not_contraction,
    constant_breach,    // sampled audit exceeded an analytic constant
    singular_jacobian,
    out_of_regime,      // a theorem hypothesis does not hold
    no_axis,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace medax
