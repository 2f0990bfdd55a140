#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "kitaev/errors.hpp"

namespace kitaev {

// Local labels of the spin-1 {|x>,|y>,|z>} basis, as 2-bit codes.
inline constexpr uint8_t site_x = 0;
inline constexpr uint8_t site_y = 1;
inline constexpr uint8_t site_z = 2;

char site_to_char(uint8_t label);
uint8_t site_from_char(char c);

// One product state of the chain: an {x,y,z} label per site, packed two bits
// per site into a single word (site 0 in the lowest bits).
class SpinConfig {
public:
    static constexpr uint32_t max_sites = 28;

    SpinConfig() = default;
    SpinConfig(uint64_t packed, uint32_t n_sites);

    static SpinConfig from_string(std::string_view s);
    // Tiles `unit` to length n_sites (n_sites must be a multiple of the unit).
    static SpinConfig tile(std::string_view unit, uint32_t n_sites);

    uint32_t n_sites() const { return n_; }
    uint64_t packed() const { return bits_; }

    uint8_t site(uint32_t j) const { return static_cast<uint8_t>((bits_ >> (2 * j)) & 3u); }
    SpinConfig with_site(uint32_t j, uint8_t label) const;

    // Cyclic shift: site j of *this lands on site (j + shift) mod N.
    SpinConfig translated(int64_t shift) const;

    // Exchanges the x and y labels on every site.
    SpinConfig xy_swapped() const;

    std::string to_string() const;

    bool operator==(const SpinConfig&) const = default;

    // Lexicographic order on the label string, site 0 most significant.
    bool lex_less(const SpinConfig& other) const;

private:
    uint64_t bits_ = 0;
    uint32_t n_ = 0;
};

struct SpinConfigHash {
    size_t operator()(const SpinConfig& c) const noexcept;
};

} // namespace kitaev
