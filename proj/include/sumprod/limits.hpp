#pragma once

#include <cstddef>
#include <string>

#include "sumprod/error.hpp"

namespace sumprod {

// Size ceilings guarding the materializing operations.
struct Limits {
    // Largest set (before deduplication) an operation may materialize.
    std::size_t max_elements = 2'000'000;
    // Largest number of point pairs the line census may hash.
    std::size_t max_line_pairs = 100'000'000;
};

inline void check_ceiling(std::size_t requested, std::size_t ceiling, const char* what) {
    if (requested > ceiling) {
        throw CeilingExceeded(std::string(what) + ": " + std::to_string(requested) + " exceeds ceiling " +
                              std::to_string(ceiling));
    }
}

}  // namespace sumprod
