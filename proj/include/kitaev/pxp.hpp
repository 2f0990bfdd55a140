#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/spin_config.hpp"

namespace kitaev {

// Spin-1/2 word on the dual lattice. Dual site j sits on the bond (j, j+1) of
// the chain; bit j set means up. Valid words are blockaded: no two adjacent
// up spins, cyclically.
struct DualConfig {
    uint32_t bits = 0;
    uint32_t n_sites = 0;

    bool blockaded() const;
    std::string to_string() const;  // 'u'/'d' per dual site
    bool operator==(const DualConfig&) const = default;
};

// Defined on the all-plus sector only: dual site j is up iff bond (j, j+1)
// carries the (y,x) pattern.
DualConfig map_to_dual(const SpinConfig& config);

// Inverse: site j of the chain is decided by the dual pair (j-1, j):
// (down, up) -> y, (up, down) -> x, (down, down) -> z.
SpinConfig map_from_dual(const DualConfig& dual);

// Ascending blockaded words of n bits (PBC). Counts follow the Lucas
// recurrence L_n = L_{n-1} + L_{n-2}.
std::vector<uint32_t> enumerate_blockaded(uint32_t n_sites);

// Constrained spin-1/2 chain that flips one site wherever both neighbours
// are down; all matrix elements +1 over the blockaded words.
struct PxpModel {
    uint32_t n_sites = 0;
    std::vector<uint32_t> words;  // ascending
    SparseHamiltonian h;

    std::optional<uint32_t> index_of(uint32_t word) const;
};

PxpModel build_pxp(uint32_t n_sites);

struct PxpReport {
    uint32_t n_sites = 0;
    uint64_t dim_kitaev = 0;
    uint64_t dim_pxp = 0;
    bool full_check = false;  // dimension-only when false
    int64_t intertwining_violations = 0;
    double max_spectral_deviation = 0.0;
    std::string first_violation;  // counterexample, when any
};

// Checks that the duality intertwines the two Hamiltonians: equal dimensions,
// every bond image mapping onto a single allowed flip with amplitude +1, and
// (full mode, N <= 14) agreeing spectra. Larger N compares dimensions only.
PxpReport verify_pxp_equivalence(uint32_t n_sites);

} // namespace kitaev
