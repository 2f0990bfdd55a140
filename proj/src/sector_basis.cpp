#include "kitaev/sector_basis.hpp"

#include <algorithm>

#include "kitaev/hamiltonian.hpp"

namespace kitaev {

SectorBasis build_sector_basis(const SpinConfig& root) {
    SectorBasis basis;
    basis.label = sector_label(root);

    basis.states.push_back(root);
    basis.depths.push_back(0);
    basis.index.emplace(root, 0);

    std::vector<SpinConfig> images;
    for (uint32_t head = 0; head < basis.states.size(); ++head) {
        const SpinConfig state = basis.states[head];
        const uint32_t depth = basis.depths[head];

        images.clear();
        for (const BondImage& im : apply_hamiltonian(state)) images.push_back(im.target);
        std::sort(images.begin(), images.end(),
                  [](const SpinConfig& a, const SpinConfig& b) { return a.lex_less(b); });
        images.erase(std::unique(images.begin(), images.end()), images.end());

        for (const SpinConfig& img : images) {
            if (basis.index.count(img)) continue;
            if (sector_label(img) != basis.label)
                throw closure_error("bond image left the sector: " + img.to_string());
            basis.index.emplace(img, static_cast<uint32_t>(basis.states.size()));
            basis.states.push_back(img);
            basis.depths.push_back(depth + 1);
        }
    }
    return basis;
}

} // namespace kitaev
