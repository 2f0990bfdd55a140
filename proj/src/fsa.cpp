#include "kitaev/fsa.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace kitaev {

namespace {

constexpr std::pair<uint8_t, uint8_t> no_source{0xff, 0xff};

// The in-sector transition pair of a bond: source -> target under the bond
// term, plus the reverse. Returns the source patterns of both directions.
struct BondPair {
    std::pair<uint8_t, uint8_t> a, b;  // the two source patterns
};

BondPair bond_transition_pair(int parity) {
    if (parity > 0) return {{site_y, site_x}, {site_z, site_z}};
    return {{site_y, site_z}, {site_z, site_x}};
}

} // namespace

Eigen::VectorXd HamiltonianSplit::apply_forward(const Eigen::VectorXd& x) const {
    if (x.size() != static_cast<Eigen::Index>(forward_.size()))
        throw input_error("state length mismatch");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (uint32_t i = 0; i < forward_.size(); ++i)
        for (const auto& [t, a] : forward_[i]) y[t] += static_cast<double>(a) * x[i];
    return y;
}

Eigen::VectorXd HamiltonianSplit::apply_backward(const Eigen::VectorXd& x) const {
    if (x.size() != static_cast<Eigen::Index>(forward_.size()))
        throw input_error("state length mismatch");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (uint32_t i = 0; i < forward_.size(); ++i)
        for (const auto& [t, a] : forward_[i]) y[i] += static_cast<double>(a) * x[t];
    return y;
}

HamiltonianSplit split_hamiltonian(const SectorBasis& basis, const SpinConfig& root) {
    if (!basis.contains(root))
        throw input_error("root state " + root.to_string() + " is not in the sector basis");
    const uint32_t n = root.n_sites();

    HamiltonianSplit split;
    split.forward_.resize(basis.dim());
    split.forward_source_.assign(n, no_source);

    // Fix the forward source pattern of every bond.
    for (uint32_t j = 0; j < n; ++j) {
        const BondPair pair = bond_transition_pair(basis.label.parity(j));
        const std::pair<uint8_t, uint8_t> root_pattern{root.site(j), root.site((j + 1) % n)};
        if (root_pattern == pair.a || root_pattern == pair.b) {
            split.forward_source_[j] = root_pattern;
            continue;
        }
        // Root is inert on this bond: orient by the BFS depths of the first
        // basis state the bond term acts on.
        for (uint32_t i = 0; i < basis.dim(); ++i) {
            const auto im = apply_bond_term(basis.states[i], j);
            if (!im) continue;
            const auto t = basis.index_of(im->target);
            if (!t) throw closure_error("basis is not closed under the Hamiltonian");
            const std::pair<uint8_t, uint8_t> src{basis.states[i].site(j),
                                                  basis.states[i].site((j + 1) % n)};
            split.forward_source_[j] =
                basis.depths[*t] > basis.depths[i] ? src : (src == pair.a ? pair.b : pair.a);
            break;
        }
    }

    // Assemble H+ and count forward transitions that skip a BFS level.
    for (uint32_t i = 0; i < basis.dim(); ++i) {
        for (const BondImage& im : apply_hamiltonian(basis.states[i])) {
            const std::pair<uint8_t, uint8_t> src{basis.states[i].site(im.bond),
                                                  basis.states[i].site((im.bond + 1) % n)};
            if (src != split.forward_source_[im.bond]) continue;
            const auto t = basis.index_of(im.target);
            if (!t) throw closure_error("basis is not closed under the Hamiltonian");
            split.forward_[i].push_back({*t, im.amplitude});
            if (basis.depths[*t] != basis.depths[i] + 1) ++split.depth_violations_;
        }
    }
    return split;
}

FsaLadder build_ladder(const SectorBasis& basis, const HamiltonianSplit& split,
                       size_t max_steps) {
    if (split.dim() != basis.dim()) throw input_error("split and basis dimensions disagree");

    FsaLadder ladder;
    ladder.root = basis.root();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.dim());
    v[0] = 1.0;  // the root is basis state 0
    ladder.vectors.push_back(v);

    while (ladder.vectors.size() <= max_steps) {
        Eigen::VectorXd w = split.apply_forward(ladder.vectors.back());
        const double beta = w.norm();
        if (beta < 1e-12) {
            ladder.closed = true;
            break;
        }
        ladder.betas.push_back(beta);
        ladder.vectors.push_back(w / beta);
    }

    // report a single-configuration endpoint if there is one
    const Eigen::VectorXd& last = ladder.vectors.back();
    Eigen::Index imax = 0;
    last.cwiseAbs().maxCoeff(&imax);
    if (std::abs(std::abs(last[imax]) - 1.0) < 1e-9)
        ladder.endpoint = basis.states[static_cast<uint32_t>(imax)];
    return ladder;
}

void require_full_closure(const FsaLadder& ladder) {
    const size_t expected = ladder.root.n_sites() + 1;
    if (!ladder.closed)
        throw input_error("forward recursion did not close");
    if (ladder.size() != expected)
        throw input_error("forward recursion closed after " + std::to_string(ladder.size()) +
                          " vectors; expected " + std::to_string(expected));
}

Eigen::MatrixXd fsa_matrix(const FsaLadder& ladder) {
    const auto m = static_cast<Eigen::Index>(ladder.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i + 1 < m; ++i)
        t(i, i + 1) = t(i + 1, i) = ladder.betas[static_cast<size_t>(i)];
    return t;
}

std::vector<OverlayPoint> fsa_overlay(const FsaLadder& ladder, const SectorBasis& basis,
                                      const SpinConfig& initial) {
    const auto idx = basis.index_of(initial);
    if (!idx) throw input_error("initial state " + initial.to_string() + " is not in the basis");
    if (!ladder.vectors.empty() &&
        ladder.vectors.front().size() != static_cast<Eigen::Index>(basis.dim()))
        throw input_error("ladder and basis dimensions disagree");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fsa_matrix(ladder));

    // component of each ladder vector on the initial configuration
    Eigen::VectorXd at_initial(static_cast<Eigen::Index>(ladder.size()));
    for (size_t nvec = 0; nvec < ladder.size(); ++nvec)
        at_initial[static_cast<Eigen::Index>(nvec)] =
            ladder.vectors[nvec][static_cast<Eigen::Index>(*idx)];

    std::vector<OverlayPoint> points;
    points.reserve(ladder.size());
    for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
        const double amp = es.eigenvectors().col(a).dot(at_initial);
        points.push_back({es.eigenvalues()[a], amp * amp});
    }
    return points;
}

} // namespace kitaev
