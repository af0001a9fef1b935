#pragma once

#include <stdexcept>
#include <string>

namespace steinhaus {

/// A query or search stepped outside the horizon-certified region.
struct HorizonError : std::runtime_error {
    explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

/// An iteration or witness budget was exhausted. `payload` carries the best
/// partial result (JSON) when a search can report one.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, std::string payload_json = "")
        : std::runtime_error(what), payload(std::move(payload_json)) {}
    std::string payload;
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace steinhaus
