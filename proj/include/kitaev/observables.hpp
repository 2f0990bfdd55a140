#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/dynamics.hpp"
#include "kitaev/sector_basis.hpp"

namespace kitaev {

// Worker cap for the loops that parallelize over eigenstates. 0 = hardware
// concurrency. Output ordering does not depend on the cap.
void set_max_threads(int n);
int max_threads();

struct EntropyPoint {
    double key;      // energy (scatter) or time (dynamics)
    double entropy;  // natural-log units
};

// Von Neumann entropy of the reduced density matrix of the first `cut` sites.
// Every basis element is a product state, so the coefficient matrix over
// (left block, right block) substrings carries the exact Schmidt values.
double entanglement_entropy(const SectorBasis& basis, const Eigen::VectorXcd& state, uint32_t cut);
double entanglement_entropy(const SectorBasis& basis, const Eigen::VectorXd& state, uint32_t cut);

// Half-chain entropy of every eigenstate (N even).
std::vector<EntropyPoint> ee_scatter(const Spectrum& spectrum, const SectorBasis& basis);

// Same scatter over the translation-symmetrized eigenbasis. Exact
// degeneracies between momentum blocks are then resolved canonically instead
// of in eigensolver-dependent mixtures. Sorted by energy.
std::vector<EntropyPoint> momentum_resolved_ee_scatter(const SectorBasis& basis);

struct OverlapTower {
    std::vector<double> energies;
    std::vector<double> overlaps;  // |<init|E_k>|^2, sums to 1
    // log10 with a 1e-16 floor; exact zeros map to -inf
    std::vector<double> log10_overlaps() const;
};

OverlapTower overlap_tower(const Spectrum& spectrum, const SectorBasis& basis,
                           const SpinConfig& initial);

struct TowerTop {
    double energy;
    double overlap;
};

// Per-bin maxima of the overlap tower; bins of the given width are centered
// on integer multiples of it. Empty bins are skipped.
std::vector<TowerTop> tower_tops(const OverlapTower& tower, double bin_width);

// Mean gap-ratio statistic <min(d_k, d_{k+1}) / max(d_k, d_{k+1})> of an
// ascending spectrum. ~0.386 for Poisson spectra, ~0.53 for GOE.
double mean_r_ratio(std::span<const double> energies);

// Eigenvalues of the translation-symmetry blocks: the basis is symmetrized
// under cyclic shifts by the sector label's minimal period before
// diagonalizing each momentum block.
std::vector<Eigen::VectorXd> momentum_block_spectra(const SectorBasis& basis);

struct LevelStats {
    double mean_r;
    size_t n_gaps;
    std::vector<size_t> block_dims;  // one entry when unresolved
};

LevelStats level_statistics(const SectorBasis& basis, const SparseHamiltonian& h,
                            bool momentum_resolve,
                            uint32_t dense_ceiling = default_dense_ceiling);

} // namespace kitaev
