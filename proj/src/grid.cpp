#include "sigals/grid.hpp"

#include "sigals/errors.hpp"

namespace sigals {

Grid make_grid(int dim, int n, const Vec& origin, double extent) {
    if (dim != 2 && dim != 3) throw ConfigError("grid dim must be 2 or 3");
    if (n < 4) throw ConfigError("grid needs at least 4 nodes per axis for stencil width");
    if (!(extent > 0.0)) throw ConfigError("grid extent must be positive");
    Grid g;
    g.dim = dim;
    g.n = n;
    g.origin = origin;
    if (dim == 2) g.origin[2] = 0.0;
    g.h = extent / n;
    return g;
}

} // namespace sigals
