#pragma once

#include <stdexcept>
#include <string>

namespace hpws {

enum class errc {
    invalid_argument,
    duplicate_points,
    dimension_mismatch,
    metric_violation,
    outside_root_cube,
    corrupt_structure,
    routing_failure,
    disconnected_graph,
    property_violation,
    io_error,
};

/// Library-wide exception; `code()` distinguishes usage errors from invariant
/// violations so callers (e.g. the CLI) can map them to exit statuses.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

}  // namespace hpws
