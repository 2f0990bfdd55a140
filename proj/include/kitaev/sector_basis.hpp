#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kitaev/sector.hpp"
#include "kitaev/spin_config.hpp"

namespace kitaev {

// Ordered basis of the sector component reached from a root state: the
// breadth-first closure under the Hamiltonian's bond images. The ordering is
// BFS discovery order with a lexicographic tie-break among the images of each
// expanded state, so two builds from the same root are identical.
struct SectorBasis {
    SectorLabel label;
    std::vector<SpinConfig> states;
    std::vector<uint32_t> depths;  // BFS distance from the root
    std::unordered_map<SpinConfig, uint32_t, SpinConfigHash> index;

    uint32_t dim() const { return static_cast<uint32_t>(states.size()); }
    const SpinConfig& root() const { return states.front(); }
    uint32_t max_depth() const { return depths.empty() ? 0 : depths.back(); }

    std::optional<uint32_t> index_of(const SpinConfig& c) const {
        auto it = index.find(c);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const SpinConfig& c) const { return index.count(c) != 0; }
};

// Requires N >= 2 (PBC). Every reached state is verified to carry the root's
// sector label.
SectorBasis build_sector_basis(const SpinConfig& root);

} // namespace kitaev
