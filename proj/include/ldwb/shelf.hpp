#pragma once

// Small finite LD-algebras used as evaluation probes.

#include <cstdint>
#include <vector>

#include "ldwb/laver_table.hpp"

namespace ldwb {

/// A finite binary operation on {0, ..., order-1}, given by its table.
struct Shelf {
    std::uint32_t order = 0;
    std::vector<std::uint32_t> table;  // row-major

    std::uint32_t operator()(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
};

/// The Laver table with values shifted to start at 0.
Shelf laver_shelf(const LaverTable& t);

/// Conjugation x*y = x y x^-1 in the symmetric group on k points.
Shelf conjugation_shelf(int k);

/// The affine shelf x*y = (1-t)x + ty modulo m.
Shelf affine_shelf(std::uint32_t m, std::uint32_t t);

/// Checks x*(y*z) = (x*y)*(x*z) over all triples.
bool is_left_distributive(const Shelf& s);

}  // namespace ldwb
