#ifndef SIGALS_BAND_HPP
#define SIGALS_BAND_HPP

#include <cstdint>
#include <vector>

#include "sigals/field.hpp"

namespace sigals {

// Narrow-band classification of nodes around the zero contour.
//   layer 0          : interface-adjacent (face neighbor of opposite sign,
//                      or phi exactly 0)
//   layer 1..n_layers: extension band, by face-neighbor BFS distance
//   kFar             : everything else
class BandMask {
public:
    static constexpr std::uint16_t kFar = 0xFFFF;
    static constexpr int kWholeDomain = -1;

    BandMask() = default;
    BandMask(const Grid& g, std::vector<std::uint16_t> layers, int n_layers)
        : grid_(g), layer_(std::move(layers)), n_layers_(n_layers) {}

    const Grid& grid() const { return grid_; }
    int n_layers() const { return n_layers_; }

    std::uint16_t layer(std::size_t i) const { return layer_[i]; }
    bool adjacent(std::size_t i) const { return layer_[i] == 0; }
    bool in_band(std::size_t i) const { return layer_[i] != kFar; }

    // Flat indices, layer 0 first, then layers 1..n (each in index order).
    const std::vector<std::size_t>& adjacent_nodes() const { return adjacent_; }
    const std::vector<std::size_t>& band_nodes() const { return band_; }

    void set_node_lists(std::vector<std::size_t> adjacent, std::vector<std::size_t> band) {
        adjacent_ = std::move(adjacent);
        band_ = std::move(band);
    }

private:
    Grid grid_;
    std::vector<std::uint16_t> layer_;
    int n_layers_ = 0;
    std::vector<std::size_t> adjacent_;
    std::vector<std::size_t> band_;
};

// n_layers = kWholeDomain grows the band until every reachable node is
// classified; n_layers() then reports the deepest layer reached.
BandMask build_band(const ScalarField& phi, int n_layers);

} // namespace sigals

#endif
