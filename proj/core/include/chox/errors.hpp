#pragma once

#include <stdexcept>
#include <string>

namespace chox {

struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};

struct malformed_simplex_error : error {
    explicit malformed_simplex_error(const std::string& m) : error(m) {}
};
struct unknown_simplex_error : error {
    explicit unknown_simplex_error(const std::string& m) : error(m) {}
};
struct base_mismatch_error : error {
    explicit base_mismatch_error(const std::string& m) : error(m) {}
};
struct unsupported_variant_error : error {
    explicit unsupported_variant_error(const std::string& m) : error(m) {}
};
struct parameter_error : error {
    explicit parameter_error(const std::string& m) : error(m) {}
};
struct squeeze_infeasible_error : error {
    explicit squeeze_infeasible_error(const std::string& m) : error(m) {}
};
struct squeeze_bound_error : error {
    explicit squeeze_bound_error(const std::string& m) : error(m) {}
};
struct support_violation_error : error {
    explicit support_violation_error(const std::string& m) : error(m) {}
};
struct invalid_local_contraction_error : error {
    explicit invalid_local_contraction_error(const std::string& m) : error(m) {}
};

}  // namespace chox
