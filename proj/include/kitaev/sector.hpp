#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kitaev/spin_config.hpp"

namespace kitaev {

// Joint eigenvalue pattern of the bond parity operators, one sign per bond.
// Bond j connects sites j and j+1 mod N; bit j set means b_j = -1.
class SectorLabel {
public:
    SectorLabel() = default;
    SectorLabel(uint32_t minus_mask, uint32_t n_bonds);

    // Parses '+'/'-' strings; the Unicode minus sign is accepted too.
    static SectorLabel from_string(std::string_view s);
    static SectorLabel tile(std::string_view unit, uint32_t n_bonds);
    static SectorLabel all_plus(uint32_t n_bonds) { return SectorLabel(0, n_bonds); }

    uint32_t n_bonds() const { return n_; }
    uint32_t minus_mask() const { return mask_; }
    int parity(uint32_t j) const { return (mask_ >> j) & 1u ? -1 : +1; }
    bool is_all_plus() const { return mask_ == 0; }

    std::string to_string() const;

    // Smallest p dividing N such that the pattern is invariant under a cyclic
    // shift by p bonds.
    uint32_t minimal_period() const;

    bool operator==(const SectorLabel&) const = default;
    bool operator<(const SectorLabel& o) const {
        return n_ != o.n_ ? n_ < o.n_ : mask_ < o.mask_;
    }

private:
    uint32_t mask_ = 0;
    uint32_t n_ = 0;
};

// Parity eigenvalue of the bond operator on a two-site configuration:
// the product of the site parity diagonals (P^y on the left site, P^x on
// the right site).
int classify_bond(uint8_t left_label, uint8_t right_label);

// Bond parities of all N bonds of a configuration (PBC). Requires N >= 2.
SectorLabel sector_label(const SpinConfig& config);

struct SectorCount {
    SectorLabel label;
    uint64_t dim;
};

// Assigns each of the 3^N product states to its sector. Sorted by label;
// dimensions sum to 3^N; empty sectors are absent. Guarded at N <= 14.
std::vector<SectorCount> enumerate_sectors(uint32_t n_sites);

// Lexicographically smallest configuration carrying the given label, if the
// label is realizable.
std::optional<SpinConfig> find_root_config(const SectorLabel& label);

} // namespace kitaev
