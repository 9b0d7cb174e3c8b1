#include "sigals/band.hpp"

namespace sigals {

BandMask build_band(const ScalarField& phi, int n_layers) {
    const Grid& g = phi.grid();
    const int n = g.n;
    const std::size_t count = g.node_count();
    std::vector<std::uint16_t> layer(count, BandMask::kFar);

    // Layer 0: a face neighbor of opposite sign, or phi exactly zero.
    std::vector<std::size_t> frontier;
    const int nk = g.dim == 3 ? n : 1;
    for (int k = 0; k < nk; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const std::size_t c = g.index(i, j, k);
                const double pc = phi[c];
                bool adj = pc == 0.0;
                if (!adj) {
                    adj = pc * phi.wat(i + 1, j, k) < 0.0 || pc * phi.wat(i - 1, j, k) < 0.0 ||
                          pc * phi.wat(i, j + 1, k) < 0.0 || pc * phi.wat(i, j - 1, k) < 0.0;
                    if (!adj && g.dim == 3)
                        adj = pc * phi.wat(i, j, k + 1) < 0.0 || pc * phi.wat(i, j, k - 1) < 0.0;
                }
                if (adj) {
                    layer[c] = 0;
                    frontier.push_back(c);
                }
            }

    // Face-neighbor BFS outwards.
    auto decode = [&](std::size_t c, int& i, int& j, int& k) {
        i = static_cast<int>(c % n);
        j = static_cast<int>((c / n) % n);
        k = static_cast<int>(c / (static_cast<std::size_t>(n) * n));
    };
    const int max_layers = n_layers == BandMask::kWholeDomain ? BandMask::kFar - 1 : n_layers;
    int deepest = 0;
    for (int l = 1; l <= max_layers && !frontier.empty(); ++l) {
        std::vector<std::size_t> next;
        for (std::size_t c : frontier) {
            int i, j, k;
            decode(c, i, j, k);
            const std::size_t nb[6] = {
                g.windex(i + 1, j, k), g.windex(i - 1, j, k), g.windex(i, j + 1, k),
                g.windex(i, j - 1, k), g.dim == 3 ? g.windex(i, j, k + 1) : c,
                g.dim == 3 ? g.windex(i, j, k - 1) : c};
            const int m = g.dim == 3 ? 6 : 4;
            for (int t = 0; t < m; ++t)
                if (layer[nb[t]] == BandMask::kFar) {
                    layer[nb[t]] = static_cast<std::uint16_t>(l);
                    next.push_back(nb[t]);
                }
        }
        if (!next.empty()) deepest = l;
        frontier = std::move(next);
    }

    BandMask mask(g, std::move(layer),
                  n_layers == BandMask::kWholeDomain ? deepest : n_layers);

    // Node lists rebuilt in index order so downstream passes are deterministic.
    std::vector<std::size_t> adjacent, band;
    for (std::size_t c = 0; c < count; ++c) {
        if (mask.layer(c) == 0) adjacent.push_back(c);
        if (mask.in_band(c)) band.push_back(c);
    }
    mask.set_node_lists(std::move(adjacent), std::move(band));
    return mask;
}

} // namespace sigals
