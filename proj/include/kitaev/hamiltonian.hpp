#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/spin_config.hpp"

namespace kitaev {

struct SectorBasis;

// Image of a product state under the bond term S^x_j S^y_{j+1}. The target
// differs from the source only at sites j and j+1 mod N.
struct BondImage {
    SpinConfig target;
    int8_t amplitude;  // +1 or -1
    uint32_t bond;
};

// Two-site transition rules of the bond term, with the sign convention of the
// matrix representation S^a_{bc} = -i eps_{abc} over the (x,y,z) basis:
//   (y,x) -> (z,z) +1,  (z,z) -> (y,x) +1,
//   (y,z) -> (z,x) -1,  (z,x) -> (y,z) -1,
// and every pair with an x on the left or a y on the right is annihilated.
std::optional<BondImage> apply_bond_term(const SpinConfig& config, uint32_t bond);

// All nonvanishing bond images, bonds 0..N-1 in order (PBC).
std::vector<BondImage> apply_hamiltonian(const SpinConfig& config);

// Real symmetric sparse matrix over a sector basis. Off-diagonal only; each
// unordered index pair is stored once (row < col, sorted) and expanded on the
// fly in matvec; amplitudes are bare signs.
class SparseHamiltonian {
public:
    struct Entry {
        uint32_t row, col;
        int8_t sign;
    };

    SparseHamiltonian() = default;
    SparseHamiltonian(uint32_t dim, std::vector<Entry> entries);

    uint32_t dim() const { return dim_; }
    const std::vector<Entry>& entries() const { return entries_; }
    // stored pairs; the expanded matrix has twice as many nonzeros
    size_t nnz_stored() const { return entries_.size(); }

    // y = H x with fixed accumulation order.
    void matvec(const double* x, double* y) const;
    void matvec(const std::complex<double>* x, std::complex<double>* y) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

    Eigen::MatrixXd to_dense() const;

private:
    uint32_t dim_ = 0;
    std::vector<Entry> entries_;
};

// Resolves every bond image of every basis state through the basis index.
// Throws closure_error if an image configuration is missing from the basis.
SparseHamiltonian build_sector_hamiltonian(const SectorBasis& basis);

// Dense matrices over the full 3^N product space, for small-N cross-checks.
// The "uniform" form puts S^x S^y on every bond; the "alternating" form puts
// S^x S^x on bonds (0,1), (2,3), ... and S^y S^y on bonds (1,2), (3,4), ...
// (PBC, N even). The two are related by a local unitary on every other site.
Eigen::MatrixXd dense_full_hamiltonian_uniform(uint32_t n_sites);
Eigen::MatrixXd dense_full_hamiltonian_alternating(uint32_t n_sites);

struct FormEquivalenceReport {
    uint32_t n_sites;
    double max_spectral_deviation;
};

// Compares the sorted full-space spectra of the two forms. N even, N <= 8.
FormEquivalenceReport verify_form_equivalence(uint32_t n_sites);

} // namespace kitaev
