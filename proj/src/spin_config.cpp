#include "kitaev/spin_config.hpp"

namespace kitaev {

char site_to_char(uint8_t label) {
    switch (label) {
        case site_x: return 'x';
        case site_y: return 'y';
        case site_z: return 'z';
        default: throw input_error("invalid site label code " + std::to_string(label));
    }
}

uint8_t site_from_char(char c) {
    switch (c) {
        case 'x': return site_x;
        case 'y': return site_y;
        case 'z': return site_z;
        default: throw input_error(std::string("invalid site label '") + c + "' (expected x, y or z)");
    }
}

SpinConfig::SpinConfig(uint64_t packed, uint32_t n_sites) : bits_(packed), n_(n_sites) {
    if (n_sites == 0 || n_sites > max_sites)
        throw input_error("chain length must be in [1, " + std::to_string(max_sites) + "]");
    for (uint32_t j = 0; j < n_sites; ++j)
        if (site(j) > site_z)
            throw input_error("packed word contains an invalid 2-bit site code");
    if (n_sites < 32 && (packed >> (2 * n_sites)) != 0)
        throw input_error("packed word has bits beyond the chain length");
}

SpinConfig SpinConfig::from_string(std::string_view s) {
    if (s.empty() || s.size() > max_sites)
        throw input_error("configuration string length must be in [1, " + std::to_string(max_sites) + "]");
    uint64_t bits = 0;
    for (size_t j = 0; j < s.size(); ++j)
        bits |= static_cast<uint64_t>(site_from_char(s[j])) << (2 * j);
    return SpinConfig(bits, static_cast<uint32_t>(s.size()));
}

SpinConfig SpinConfig::tile(std::string_view unit, uint32_t n_sites) {
    if (unit.empty())
        throw input_error("tile unit must be nonempty");
    if (n_sites % unit.size() != 0)
        throw input_error("chain length " + std::to_string(n_sites) +
                          " is not a multiple of the unit length " + std::to_string(unit.size()));
    std::string full;
    full.reserve(n_sites);
    while (full.size() < n_sites) full.append(unit);
    return from_string(full);
}

SpinConfig SpinConfig::with_site(uint32_t j, uint8_t label) const {
    if (j >= n_) throw input_error("site index out of range");
    if (label > site_z) throw input_error("invalid site label code");
    uint64_t bits = bits_ & ~(uint64_t{3} << (2 * j));
    bits |= static_cast<uint64_t>(label) << (2 * j);
    return SpinConfig(bits, n_);
}

SpinConfig SpinConfig::translated(int64_t shift) const {
    const int64_t n = n_;
    int64_t s = shift % n;
    if (s < 0) s += n;
    if (s == 0) return *this;
    const uint32_t w = 2 * n_;
    const uint64_t mask = (w == 64) ? ~uint64_t{0} : ((uint64_t{1} << w) - 1);
    const uint32_t up = 2 * static_cast<uint32_t>(s);
    return SpinConfig(((bits_ << up) | (bits_ >> (w - up))) & mask, n_);
}

SpinConfig SpinConfig::xy_swapped() const {
    uint64_t bits = bits_;
    for (uint32_t j = 0; j < n_; ++j) {
        const uint8_t l = site(j);
        if (l == site_z) continue;
        bits ^= uint64_t{1} << (2 * j);
    }
    return SpinConfig(bits, n_);
}

std::string SpinConfig::to_string() const {
    std::string s(n_, '?');
    for (uint32_t j = 0; j < n_; ++j) s[j] = site_to_char(site(j));
    return s;
}

bool SpinConfig::lex_less(const SpinConfig& other) const {
    if (n_ != other.n_) return n_ < other.n_;
    for (uint32_t j = 0; j < n_; ++j) {
        const uint8_t a = site(j), b = other.site(j);
        if (a != b) return a < b;
    }
    return false;
}

size_t SpinConfigHash::operator()(const SpinConfig& c) const noexcept {
    // splitmix64 over the packed word, salted with the length
    uint64_t x = c.packed() + 0x9e3779b97f4a7c15ull * (c.n_sites() + 1);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27; x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return static_cast<size_t>(x);
}

} // namespace kitaev
