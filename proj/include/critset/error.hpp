#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace critset {

// All numerical failures carry a short machine-readable name that the CLI
// echoes on the diagnostic stream (exit code 2).
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

inline NumericalError resolution_error(const std::string& msg) {
    return {"resolution-error", msg};
}
inline NumericalError degenerate_vector_error(const std::string& msg) {
    return {"degenerate-vector", msg};
}
inline NumericalError refinement_failure(const std::string& msg) {
    return {"refinement-failure", msg};
}
inline NumericalError window_too_small(const std::string& msg) {
    return {"window-too-small", msg};
}
inline NumericalError rank_deficiency_error(const std::string& msg) {
    return {"rank-deficiency", msg};
}
inline NumericalError inconsistency_error(const std::string& msg) {
    return {"inconsistency", msg};
}
inline NumericalError near_critical_value_error(const std::string& msg) {
    return {"near-critical-value", msg};
}
inline NumericalError not_projectable_error(const std::string& msg) {
    return {"not-projectable", msg};
}
inline NumericalError correction_window_error(const std::string& msg) {
    return {"correction-window", msg};
}
inline NumericalError component_structure_error(const std::string& msg) {
    return {"component-structure", msg};
}
inline NumericalError not_locally_convex_error(const std::string& msg) {
    return {"not-locally-convex", msg};
}
inline NumericalError degenerate_normalization_error(const std::string& msg) {
    return {"degenerate-normalization", msg};
}
inline NumericalError radius_adjustment_error(const std::string& msg) {
    return {"radius-adjustment", msg};
}
inline NumericalError invalid_input(const std::string& msg) {
    return {"invalid-input", msg};
}

} // namespace critset
