#pragma once

#include <stdexcept>
#include <string>

namespace gbcdeploy {

enum class errc {
    parse_error,
    reject_self_loop,
    reject_duplicate,
    v_already_excluded,
    v_not_in_index,
    budget_exceeds_candidates,
    overlap,
    path_explosion,
    search_too_large,
    empty_input,
    invalid_argument,
    internal_inconsistency,
};

/// True for errors caused by instance size guards rather than bad input.
constexpr bool is_resource_guard(errc c) {
    return c == errc::path_explosion || c == errc::search_too_large;
}

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace gbcdeploy
