#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/sector_basis.hpp"

namespace kitaev {

// Root-relative splitting H = H+ + H-. Every bond carries exactly one
// transition pair inside a sector (yx <-> zz on b=+1 bonds, yz <-> zx on
// b=-1 bonds); the direction that moves away from the root goes to H+ and its
// adjoint to H-. On bonds where the root's own pattern is a transition source
// that direction is forward; on the remaining bonds the direction is fixed
// once from the BFS depths of the first basis state that activates the bond.
class HamiltonianSplit {
public:
    uint32_t dim() const { return static_cast<uint32_t>(forward_.size()); }

    // y = H+ x  /  y = H- x = (H+)^T x
    Eigen::VectorXd apply_forward(const Eigen::VectorXd& x) const;
    Eigen::VectorXd apply_backward(const Eigen::VectorXd& x) const;

    // forward images of basis state i: (target index, sign)
    const std::vector<std::pair<uint32_t, int8_t>>& forward_images(uint32_t i) const {
        return forward_[i];
    }

    // forward transitions whose target BFS depth is not source depth + 1;
    // zero in sectors whose Hilbert-space graph is exactly layered
    int64_t depth_violations() const { return depth_violations_; }

    // forward source pattern per bond, as (left,right) label codes; empty
    // slot (0xff) where the bond is never active in the sector
    const std::vector<std::pair<uint8_t, uint8_t>>& forward_sources() const {
        return forward_source_;
    }

private:
    friend HamiltonianSplit split_hamiltonian(const SectorBasis&, const SpinConfig&);
    std::vector<std::vector<std::pair<uint32_t, int8_t>>> forward_;
    std::vector<std::pair<uint8_t, uint8_t>> forward_source_;
    int64_t depth_violations_ = 0;
};

HamiltonianSplit split_hamiltonian(const SectorBasis& basis, const SpinConfig& root);

// Forward-scattering ladder |0>, |1>, ... with |0> the root unit vector and
// |n> the normalized (H+)^n image. betas[n-1] = ||H+ |n-1>||; the recursion
// stops when H+ annihilates the last vector.
struct FsaLadder {
    SpinConfig root;
    std::vector<Eigen::VectorXd> vectors;
    std::vector<double> betas;
    bool closed = false;                  // annihilation was reached
    std::optional<SpinConfig> endpoint;   // set when the last vector is a single basis state

    size_t size() const { return vectors.size(); }
};

// max_steps guards runaway recursions in sectors where the split is not
// depth-consistent; the expected ladder length is N+1.
FsaLadder build_ladder(const SectorBasis& basis, const HamiltonianSplit& split,
                       size_t max_steps = 4096);

// Throws input_error unless the ladder closed with exactly n_sites+1 vectors.
void require_full_closure(const FsaLadder& ladder);

// Symmetric tridiagonal matrix with zero diagonal and the betas off it.
Eigen::MatrixXd fsa_matrix(const FsaLadder& ladder);

struct OverlayPoint {
    double energy;
    double overlap;  // |<initial|psi_fsa>|^2
};

// Eigenstates of the tridiagonal matrix embedded back into sector
// coordinates through the ladder, paired with their squared overlap against
// a product basis state.
std::vector<OverlayPoint> fsa_overlay(const FsaLadder& ladder, const SectorBasis& basis,
                                      const SpinConfig& initial);

} // namespace kitaev
