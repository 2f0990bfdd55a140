#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/sector_basis.hpp"

namespace kitaev {

inline constexpr uint32_t default_dense_ceiling = 6000;

struct Spectrum {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXd vectors;   // column k belongs to energies[k]
};

// Complete eigendecomposition of a sector Hamiltonian. Refuses dimensions
// above the ceiling; large sectors go through the Krylov path instead.
Spectrum full_diagonalize(const SparseHamiltonian& h,
                          uint32_t dense_ceiling = default_dense_ceiling);

struct KrylovOptions {
    int m = 30;           // maximal subspace dimension per step
    double tol = 1e-10;   // local error estimate per application
};

// exp(-i H dt) v0 through a Lanczos subspace, splitting the step adaptively
// until the local error estimate passes. A breakdown (beta = 0) means the
// subspace is exactly invariant and the result is exact.
Eigen::VectorXcd krylov_evolve(const SparseHamiltonian& h, const Eigen::VectorXcd& v0,
                               double dt, const KrylovOptions& opts = {});

struct TimeGrid {
    double t_max = 40.0;
    double dt = 0.05;
    std::vector<double> times() const;
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

enum class EvolveMethod { automatic, dense, krylov };

struct EvolveOptions {
    TimeGrid grid;
    KrylovOptions krylov;
    uint32_t dense_ceiling = default_dense_ceiling;
    EvolveMethod method = EvolveMethod::automatic;
    int entropy_cut = -1;        // -1: half chain
    bool sample_entropy = true;  // entropy sampling costs one SVD per grid point
};

struct EvolutionResult {
    TimeSeries fidelity;                  // |<init|v(t)>|^2
    std::optional<TimeSeries> transfer;   // |<target|v(t)>|^2, when a target is given
    std::optional<TimeSeries> entropy;    // block entanglement of v(t)
    std::string method;                   // "dense" or "krylov"
};

// One evolution from a product basis state, sampling fidelity, optional state
// transfer and bipartite entropy on the grid. Dense propagation through the
// spectrum when the dimension is under the ceiling, Krylov stepping otherwise.
EvolutionResult run_evolution(const SectorBasis& basis, const SparseHamiltonian& h,
                              const SpinConfig& initial,
                              const std::optional<SpinConfig>& target,
                              const EvolveOptions& opts = {});

TimeSeries fidelity_series(const SectorBasis& basis, const SparseHamiltonian& h,
                           const SpinConfig& initial, const EvolveOptions& opts = {});
TimeSeries transfer_series(const SectorBasis& basis, const SparseHamiltonian& h,
                           const SpinConfig& initial, const SpinConfig& target,
                           const EvolveOptions& opts = {});

// Uniform draw over the basis states, reproducible under the seed.
SpinConfig random_basis_state(const SectorBasis& basis, uint64_t seed);

// Local maxima with prominence above the threshold, at times past t_min.
std::vector<size_t> find_revival_peaks(const TimeSeries& series,
                                       double min_prominence = 0.01, double t_min = 1.0);

} // namespace kitaev
