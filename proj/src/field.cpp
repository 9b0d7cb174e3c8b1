#include "sigals/field.hpp"

#include <cmath>
#include <cstdio>

#include "sigals/errors.hpp"

namespace sigals {

bool ScalarField::is_finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

bool VectorField::is_finite() const {
    for (int a = 0; a < grid_.dim; ++a)
        for (double x : comp_[a])
            if (!std::isfinite(x)) return false;
    return true;
}

ScalarField sample_field(const Grid& grid, const std::function<double(const Vec&)>& f) {
    ScalarField out(grid);
    const int nk = grid.dim == 3 ? grid.n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < grid.n; ++j)
            for (int i = 0; i < grid.n; ++i) {
                const double val = f(grid.position(i, j, k));
                if (!std::isfinite(val)) {
                    char buf[128];
                    std::snprintf(buf, sizeof(buf),
                                  "sample_field: non-finite value at node (%d,%d,%d)", i, j, k);
                    throw NumericalError(buf);
                }
                out.at(i, j, k) = val;
            }
    return out;
}

ScalarField wrap_shift(const ScalarField& field, const std::array<int, 3>& offset) {
    const Grid& g = field.grid();
    ScalarField out(g);
    const int nk = g.dim == 3 ? g.n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                out.at(i, j, k) =
                    field.wat(i - offset[0], j - offset[1], g.dim == 3 ? k - offset[2] : 0);
    return out;
}

} // namespace sigals
