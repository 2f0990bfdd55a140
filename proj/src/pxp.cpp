#include "kitaev/pxp.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "kitaev/dynamics.hpp"
#include "kitaev/sector_basis.hpp"

namespace kitaev {

namespace {

uint32_t rotl_bits(uint32_t w, uint32_t n, uint32_t s) {
    s %= n;
    const uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1);
    return ((w << s) | (w >> (n - s))) & mask;
}

} // namespace

bool DualConfig::blockaded() const {
    if (n_sites < 2) return true;
    return (bits & rotl_bits(bits, n_sites, 1)) == 0;
}

std::string DualConfig::to_string() const {
    std::string s(n_sites, 'd');
    for (uint32_t j = 0; j < n_sites; ++j)
        if ((bits >> j) & 1u) s[j] = 'u';
    return s;
}

DualConfig map_to_dual(const SpinConfig& config) {
    const uint32_t n = config.n_sites();
    if (!sector_label(config).is_all_plus())
        throw input_error("the dual mapping is defined on the all-plus sector; got " +
                          config.to_string());
    DualConfig dual{0, n};
    for (uint32_t j = 0; j < n; ++j)
        if (config.site(j) == site_y && config.site((j + 1) % n) == site_x)
            dual.bits |= 1u << j;
    return dual;
}

SpinConfig map_from_dual(const DualConfig& dual) {
    if (dual.n_sites < 2 || dual.n_sites > SpinConfig::max_sites)
        throw input_error("dual word length out of range");
    if (!dual.blockaded())
        throw input_error("dual word violates the blockade: " + dual.to_string());
    uint64_t bits = 0;
    for (uint32_t j = 0; j < dual.n_sites; ++j) {
        const bool in = (dual.bits >> ((j + dual.n_sites - 1) % dual.n_sites)) & 1u;
        const bool out = (dual.bits >> j) & 1u;
        uint8_t label;
        if (!in && out) label = site_y;
        else if (in && !out) label = site_x;
        else label = site_z;  // (up, up) is excluded by the blockade
        bits |= static_cast<uint64_t>(label) << (2 * j);
    }
    return SpinConfig(bits, dual.n_sites);
}

std::vector<uint32_t> enumerate_blockaded(uint32_t n_sites) {
    if (n_sites < 2 || n_sites > SpinConfig::max_sites)
        throw input_error("blockaded enumeration requires 2 <= N <= " +
                          std::to_string(SpinConfig::max_sites));
    std::vector<uint32_t> words;
    const uint32_t total = 1u << n_sites;
    for (uint32_t w = 0; w < total; ++w)
        if ((w & rotl_bits(w, n_sites, 1)) == 0) words.push_back(w);
    return words;
}

std::optional<uint32_t> PxpModel::index_of(uint32_t word) const {
    const auto it = std::lower_bound(words.begin(), words.end(), word);
    if (it == words.end() || *it != word) return std::nullopt;
    return static_cast<uint32_t>(it - words.begin());
}

PxpModel build_pxp(uint32_t n_sites) {
    if (n_sites < 3) throw input_error("the constrained chain needs at least three sites");
    PxpModel model;
    model.n_sites = n_sites;
    model.words = enumerate_blockaded(n_sites);

    std::vector<SparseHamiltonian::Entry> entries;
    for (uint32_t i = 0; i < model.words.size(); ++i) {
        const uint32_t w = model.words[i];
        for (uint32_t j = 0; j < n_sites; ++j) {
            const uint32_t left = (j + n_sites - 1) % n_sites;
            const uint32_t right = (j + 1) % n_sites;
            if ((w >> left) & 1u || (w >> right) & 1u) continue;
            const uint32_t flipped = w ^ (1u << j);
            const auto t = model.index_of(flipped);
            if (!t) throw std::logic_error("flip left the blockaded set");
            if (i < *t) entries.push_back({i, *t, +1});
        }
    }
    model.h = SparseHamiltonian(static_cast<uint32_t>(model.words.size()), std::move(entries));
    return model;
}

PxpReport verify_pxp_equivalence(uint32_t n_sites) {
    constexpr uint32_t full_guard = 14;
    if (n_sites < 3 || n_sites > SpinConfig::max_sites)
        throw input_error("equivalence check requires 3 <= N <= " +
                          std::to_string(SpinConfig::max_sites));

    PxpReport report;
    report.n_sites = n_sites;
    report.full_check = n_sites <= full_guard;

    // all-z root always lies in the all-plus sector
    const SpinConfig root(/*packed=*/[&] {
        uint64_t b = 0;
        for (uint32_t j = 0; j < n_sites; ++j) b |= static_cast<uint64_t>(site_z) << (2 * j);
        return b;
    }(), n_sites);
    const SectorBasis basis = build_sector_basis(root);
    report.dim_kitaev = basis.dim();
    report.dim_pxp = enumerate_blockaded(n_sites).size();

    if (!report.full_check) {
        if (report.dim_kitaev != report.dim_pxp)
            report.first_violation = "sector and blockaded-word dimensions disagree";
        return report;
    }

    const PxpModel pxp = build_pxp(n_sites);
    if (report.dim_kitaev != report.dim_pxp) {
        ++report.intertwining_violations;
        report.first_violation = "sector and blockaded-word dimensions disagree";
    }

    auto note = [&](const SpinConfig& s, const std::string& what) {
        ++report.intertwining_violations;
        if (report.first_violation.empty())
            report.first_violation = s.to_string() + ": " + what;
    };

    // Every bond image must map onto exactly the corresponding allowed flip,
    // with amplitude +1 on both sides.
    for (uint32_t i = 0; i < basis.dim(); ++i) {
        const SpinConfig& s = basis.states[i];
        const DualConfig ds = map_to_dual(s);
        const auto pxp_row = pxp.index_of(ds.bits);
        if (!pxp_row) {
            note(s, "dual word is not blockaded");
            continue;
        }
        std::vector<uint32_t> mapped_images;
        for (const BondImage& im : apply_hamiltonian(s)) {
            if (im.amplitude != +1) {
                note(s, "bond image with negative amplitude");
                continue;
            }
            const DualConfig dt = map_to_dual(im.target);
            mapped_images.push_back(dt.bits);
            if ((ds.bits ^ dt.bits) != (1u << im.bond)) {
                note(s, "dual images differ away from the acted bond");
                continue;
            }
            if (!pxp.index_of(dt.bits)) note(s, "dual image is not blockaded");
        }
        // image multisets must agree
        size_t pxp_count = 0;
        for (uint32_t j = 0; j < n_sites; ++j) {
            const uint32_t left = (j + n_sites - 1) % n_sites;
            const uint32_t right = (j + 1) % n_sites;
            if ((ds.bits >> left) & 1u || (ds.bits >> right) & 1u) continue;
            ++pxp_count;
            if (std::find(mapped_images.begin(), mapped_images.end(), ds.bits ^ (1u << j)) ==
                mapped_images.end())
                note(s, "allowed flip has no matching bond image");
        }
        if (pxp_count != mapped_images.size()) note(s, "image counts disagree");
    }

    if (report.dim_kitaev == report.dim_pxp) {
        const SparseHamiltonian hk = build_sector_hamiltonian(basis);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ek(hk.to_dense(), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(pxp.h.to_dense(), Eigen::EigenvaluesOnly);
        report.max_spectral_deviation =
            (ek.eigenvalues() - ep.eigenvalues()).cwiseAbs().maxCoeff();
    } else {
        report.max_spectral_deviation = std::numeric_limits<double>::infinity();
    }
    return report;
}

} // namespace kitaev
