#ifndef SIGALS_GRID_HPP
#define SIGALS_GRID_HPP

#include <cstddef>
#include <cstdint>

#include "sigals/vec.hpp"

namespace sigals {

// Uniform periodic Cartesian lattice. Node n wraps to node 0; there is no
// duplicated boundary node, so h = extent / n on every axis.
struct Grid {
    int dim = 2;       // 2 or 3
    int n = 0;         // nodes per axis
    Vec origin{};      // physical coordinate of node (0,...,0)
    double h = 0.0;    // uniform spacing, identical on all axes

    std::size_t node_count() const {
        std::size_t c = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        return dim == 3 ? c * static_cast<std::size_t>(n) : c;
    }

    double extent() const { return h * n; }

    // Periodic index reduction; valid for any integer, including negatives.
    int wrap(int i) const {
        int r = i % n;
        return r < 0 ? r + n : r;
    }

    std::size_t index(int i, int j, int k = 0) const {
        return (static_cast<std::size_t>(k) * n + j) * n + i;
    }

    std::size_t windex(int i, int j, int k = 0) const {
        return index(wrap(i), wrap(j), dim == 3 ? wrap(k) : 0);
    }

    // position(i) = origin + h*i componentwise, exactly.
    Vec position(int i, int j, int k = 0) const {
        return {origin[0] + h * i, origin[1] + h * j,
                dim == 3 ? origin[2] + h * k : 0.0};
    }

    bool operator==(const Grid&) const = default;
};

// Builds a periodic grid over a square/cubic domain. Rejects n < 4 (stencils
// need width) and non-positive extent.
Grid make_grid(int dim, int n, const Vec& origin, double extent);

} // namespace sigals

#endif
