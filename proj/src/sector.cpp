#include "kitaev/sector.hpp"

#include <algorithm>
#include <map>

namespace kitaev {

SectorLabel::SectorLabel(uint32_t minus_mask, uint32_t n_bonds) : mask_(minus_mask), n_(n_bonds) {
    if (n_bonds == 0 || n_bonds > SpinConfig::max_sites)
        throw input_error("bond count must be in [1, " + std::to_string(SpinConfig::max_sites) + "]");
    if (n_bonds < 32 && (minus_mask >> n_bonds) != 0)
        throw input_error("label mask has bits beyond the bond count");
}

SectorLabel SectorLabel::from_string(std::string_view s) {
    uint32_t mask = 0, n = 0;
    for (size_t i = 0; i < s.size(); ++i, ++n) {
        if (n >= SpinConfig::max_sites) throw input_error("sector label too long");
        if (s[i] == '+') continue;
        if (s[i] == '-') { mask |= 1u << n; continue; }
        // U+2212 minus sign, UTF-8 "\xe2\x88\x92"
        if (static_cast<unsigned char>(s[i]) == 0xe2 && i + 2 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0x88 &&
            static_cast<unsigned char>(s[i + 2]) == 0x92) {
            mask |= 1u << n;
            i += 2;
            continue;
        }
        throw input_error("sector label must consist of '+'/'-' characters");
    }
    if (n == 0) throw input_error("sector label must be nonempty");
    return SectorLabel(mask, n);
}

SectorLabel SectorLabel::tile(std::string_view unit, uint32_t n_bonds) {
    const SectorLabel u = from_string(unit);
    if (n_bonds % u.n_bonds() != 0)
        throw input_error("bond count " + std::to_string(n_bonds) +
                          " is not a multiple of the pattern length " + std::to_string(u.n_bonds()));
    uint32_t mask = 0;
    for (uint32_t j = 0; j < n_bonds; ++j)
        if (u.parity(j % u.n_bonds()) < 0) mask |= 1u << j;
    return SectorLabel(mask, n_bonds);
}

std::string SectorLabel::to_string() const {
    std::string s(n_, '+');
    for (uint32_t j = 0; j < n_; ++j)
        if (parity(j) < 0) s[j] = '-';
    return s;
}

uint32_t SectorLabel::minimal_period() const {
    for (uint32_t p = 1; p <= n_; ++p) {
        if (n_ % p != 0) continue;
        bool ok = true;
        for (uint32_t j = 0; j < n_ && ok; ++j)
            ok = parity(j) == parity((j + p) % n_);
        if (ok) return p;
    }
    return n_;
}

int classify_bond(uint8_t left_label, uint8_t right_label) {
    // Diagonals of the site parity matrices over (x, y, z).
    static constexpr int parity_y[3] = {-1, +1, -1};
    static constexpr int parity_x[3] = {+1, -1, -1};
    if (left_label > site_z || right_label > site_z)
        throw input_error("invalid site label code");
    return parity_y[left_label] * parity_x[right_label];
}

SectorLabel sector_label(const SpinConfig& config) {
    const uint32_t n = config.n_sites();
    if (n < 2) throw input_error("sector label requires at least two sites");
    uint32_t mask = 0;
    for (uint32_t j = 0; j < n; ++j)
        if (classify_bond(config.site(j), config.site((j + 1) % n)) < 0) mask |= 1u << j;
    return SectorLabel(mask, n);
}

std::vector<SectorCount> enumerate_sectors(uint32_t n_sites) {
    constexpr uint32_t guard = 14;
    if (n_sites < 2) throw input_error("sector enumeration requires at least two sites");
    if (n_sites > guard)
        throw resource_limit_error("sector enumeration is guarded at N <= " + std::to_string(guard) +
                                   " (3^N states); got N = " + std::to_string(n_sites));

    uint64_t total = 1;
    for (uint32_t j = 0; j < n_sites; ++j) total *= 3;

    std::map<uint32_t, uint64_t> counts;
    std::vector<uint8_t> sites(n_sites, 0);
    for (uint64_t it = 0; it < total; ++it) {
        uint32_t mask = 0;
        for (uint32_t j = 0; j < n_sites; ++j)
            if (classify_bond(sites[j], sites[(j + 1) % n_sites]) < 0) mask |= 1u << j;
        ++counts[mask];
        for (uint32_t j = 0; j < n_sites; ++j) {
            if (++sites[j] <= site_z) break;
            sites[j] = 0;
        }
    }

    std::vector<SectorCount> out;
    out.reserve(counts.size());
    for (const auto& [mask, dim] : counts)
        out.push_back({SectorLabel(mask, n_sites), dim});
    return out;
}

std::optional<SpinConfig> find_root_config(const SectorLabel& label) {
    const uint32_t n = label.n_bonds();
    if (n < 2) throw input_error("sector roots require at least two sites");
    std::vector<uint8_t> sites(n, 0);

    // Depth-first over site labels in ascending order; bond j constrains the
    // pair (j, j+1) and the last bond closes the ring.
    auto search = [&](auto&& self, uint32_t j) -> bool {
        if (j == n)
            return classify_bond(sites[n - 1], sites[0]) == label.parity(n - 1);
        for (uint8_t l = site_x; l <= site_z; ++l) {
            if (j > 0 && classify_bond(sites[j - 1], l) != label.parity(j - 1)) continue;
            sites[j] = l;
            if (self(self, j + 1)) return true;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;

    uint64_t bits = 0;
    for (uint32_t j = 0; j < n; ++j) bits |= static_cast<uint64_t>(sites[j]) << (2 * j);
    return SpinConfig(bits, n);
}

} // namespace kitaev
