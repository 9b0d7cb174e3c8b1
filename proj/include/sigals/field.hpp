#ifndef SIGALS_FIELD_HPP
#define SIGALS_FIELD_HPP

#include <array>
#include <functional>
#include <vector>

#include "sigals/grid.hpp"

namespace sigals {

// Node-centered scalar samples over a periodic grid. Value semantics: fields
// are immutable inputs to operations, which produce new fields.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g, double init = 0.0)
        : grid_(g), v_(g.node_count(), init) {}
    ScalarField(const Grid& g, std::vector<double> values)
        : grid_(g), v_(std::move(values)) {}

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }

    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }

    double at(int i, int j, int k = 0) const { return v_[grid_.index(i, j, k)]; }
    double& at(int i, int j, int k = 0) { return v_[grid_.index(i, j, k)]; }

    // Periodic access for stencil code off the fast path.
    double wat(int i, int j, int k = 0) const { return v_[grid_.windex(i, j, k)]; }

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    bool is_finite() const;
    double max_abs() const;

private:
    Grid grid_;
    std::vector<double> v_;
};

// Node-centered d-vector samples, stored one component array per axis.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Grid& g) : grid_(g) {
        for (int a = 0; a < g.dim; ++a) comp_[a].assign(g.node_count(), 0.0);
    }

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim; }

    const std::vector<double>& comp(int axis) const { return comp_[axis]; }
    std::vector<double>& comp(int axis) { return comp_[axis]; }

    Vec at(std::size_t i) const {
        return {comp_[0][i], comp_[1][i], grid_.dim == 3 ? comp_[2][i] : 0.0};
    }
    void set(std::size_t i, const Vec& v) {
        comp_[0][i] = v[0];
        comp_[1][i] = v[1];
        if (grid_.dim == 3) comp_[2][i] = v[2];
    }

    bool is_finite() const;

private:
    Grid grid_;
    std::array<std::vector<double>, 3> comp_;
};

// Samples f at every node position. Non-finite f output is an initialization
// failure and throws NumericalError.
ScalarField sample_field(const Grid& grid, const std::function<double(const Vec&)>& f);

// Periodic index shift: values permuted so that the node at index i takes the
// value previously at i - offset (shifting by n is the identity).
ScalarField wrap_shift(const ScalarField& field, const std::array<int, 3>& offset);

} // namespace sigals

#endif
