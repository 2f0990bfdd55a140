#include "kitaev/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "kitaev/sector_basis.hpp"

namespace kitaev {

namespace {

// rule[left][right] = {target_left, target_right, sign}; sign 0 = annihilated
struct BondRule {
    uint8_t left, right;
    int8_t sign;
};

constexpr BondRule bond_rule(uint8_t l, uint8_t r) {
    if (l == site_y && r == site_x) return {site_z, site_z, +1};
    if (l == site_z && r == site_z) return {site_y, site_x, +1};
    if (l == site_y && r == site_z) return {site_z, site_x, -1};
    if (l == site_z && r == site_x) return {site_y, site_z, -1};
    return {0, 0, 0};
}

} // namespace

std::optional<BondImage> apply_bond_term(const SpinConfig& config, uint32_t bond) {
    const uint32_t n = config.n_sites();
    if (bond >= n) throw input_error("bond index out of range");
    const uint32_t right = (bond + 1) % n;
    const BondRule rule = bond_rule(config.site(bond), config.site(right));
    if (rule.sign == 0) return std::nullopt;
    SpinConfig target = config.with_site(bond, rule.left).with_site(right, rule.right);
    return BondImage{target, rule.sign, bond};
}

std::vector<BondImage> apply_hamiltonian(const SpinConfig& config) {
    std::vector<BondImage> images;
    images.reserve(config.n_sites());
    for (uint32_t j = 0; j < config.n_sites(); ++j)
        if (auto im = apply_bond_term(config, j)) images.push_back(*im);
    return images;
}

SparseHamiltonian::SparseHamiltonian(uint32_t dim, std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
    for (const Entry& e : entries_) {
        if (e.row >= e.col) throw input_error("entries must satisfy row < col");
        if (e.col >= dim_) throw input_error("entry index out of range");
        if (e.sign != 1 && e.sign != -1) throw input_error("amplitudes must be +1 or -1");
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
}

void SparseHamiltonian::matvec(const double* x, double* y) const {
    std::fill(y, y + dim_, 0.0);
    for (const Entry& e : entries_) {
        const double a = static_cast<double>(e.sign);
        y[e.row] += a * x[e.col];
        y[e.col] += a * x[e.row];
    }
}

void SparseHamiltonian::matvec(const std::complex<double>* x, std::complex<double>* y) const {
    std::fill(y, y + dim_, std::complex<double>(0.0, 0.0));
    for (const Entry& e : entries_) {
        const double a = static_cast<double>(e.sign);
        y[e.row] += a * x[e.col];
        y[e.col] += a * x[e.row];
    }
}

Eigen::VectorXd SparseHamiltonian::apply(const Eigen::VectorXd& x) const {
    if (x.size() != static_cast<Eigen::Index>(dim_)) throw input_error("matvec length mismatch");
    Eigen::VectorXd y(dim_);
    matvec(x.data(), y.data());
    return y;
}

Eigen::VectorXcd SparseHamiltonian::apply(const Eigen::VectorXcd& x) const {
    if (x.size() != static_cast<Eigen::Index>(dim_)) throw input_error("matvec length mismatch");
    Eigen::VectorXcd y(dim_);
    matvec(x.data(), y.data());
    return y;
}

Eigen::MatrixXd SparseHamiltonian::to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (const Entry& e : entries_) {
        m(e.row, e.col) += e.sign;
        m(e.col, e.row) += e.sign;
    }
    return m;
}

SparseHamiltonian build_sector_hamiltonian(const SectorBasis& basis) {
    std::vector<SparseHamiltonian::Entry> entries;
    entries.reserve(basis.dim() * basis.label.n_bonds() / 2);
    for (uint32_t i = 0; i < basis.dim(); ++i) {
        for (const BondImage& im : apply_hamiltonian(basis.states[i])) {
            const auto j = basis.index_of(im.target);
            if (!j)
                throw closure_error("basis is not closed: image " + im.target.to_string() +
                                    " of state " + basis.states[i].to_string() + " is missing");
            if (i < *j) entries.push_back({i, *j, im.amplitude});
        }
    }
    return SparseHamiltonian(basis.dim(), std::move(entries));
}

namespace {

uint64_t pow3(uint32_t n) {
    uint64_t p = 1;
    while (n--) p *= 3;
    return p;
}

uint8_t site_of(uint64_t state, uint32_t j) {
    for (uint32_t k = 0; k < j; ++k) state /= 3;
    return static_cast<uint8_t>(state % 3);
}

uint64_t with_pair(uint64_t state, uint32_t i, uint8_t li, uint32_t j, uint8_t lj) {
    uint64_t pi = 1, pj = 1;
    for (uint32_t k = 0; k < i; ++k) pi *= 3;
    for (uint32_t k = 0; k < j; ++k) pj *= 3;
    state += (static_cast<int64_t>(li) - site_of(state, i)) * pi;
    state += (static_cast<int64_t>(lj) - site_of(state, j)) * pj;
    return state;
}

// Accumulates one two-site coupling given its 9x9 action as transition rules
// {(l,r) -> (l',r'), amp}.
struct PairRule {
    uint8_t l, r, lp, rp;
    double amp;
};

void add_pair_coupling(Eigen::MatrixXd& h, uint32_t n, uint32_t i, uint32_t j,
                       const std::vector<PairRule>& rules) {
    const uint64_t total = pow3(n);
    for (uint64_t s = 0; s < total; ++s) {
        const uint8_t li = site_of(s, i), lj = site_of(s, j);
        for (const PairRule& rule : rules) {
            if (rule.l != li || rule.r != lj) continue;
            const uint64_t t = with_pair(s, i, rule.lp, j, rule.rp);
            h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += rule.amp;
        }
    }
}

// S^x ox S^y on the ordered pair (left, right).
const std::vector<PairRule> xy_rules = {
    {site_y, site_x, site_z, site_z, +1.0},
    {site_z, site_z, site_y, site_x, +1.0},
    {site_y, site_z, site_z, site_x, -1.0},
    {site_z, site_x, site_y, site_z, -1.0},
};

// S^x ox S^x couples only the {y,z} labels of both sites.
const std::vector<PairRule> xx_rules = {
    {site_y, site_y, site_z, site_z, -1.0},
    {site_z, site_z, site_y, site_y, -1.0},
    {site_y, site_z, site_z, site_y, +1.0},
    {site_z, site_y, site_y, site_z, +1.0},
};

// S^y ox S^y couples only the {x,z} labels of both sites.
const std::vector<PairRule> yy_rules = {
    {site_x, site_x, site_z, site_z, -1.0},
    {site_z, site_z, site_x, site_x, -1.0},
    {site_x, site_z, site_z, site_x, +1.0},
    {site_z, site_x, site_x, site_z, +1.0},
};

} // namespace

Eigen::MatrixXd dense_full_hamiltonian_uniform(uint32_t n_sites) {
    if (n_sites < 2 || n_sites > 8)
        throw resource_limit_error("dense full-space build is guarded at 2 <= N <= 8");
    const auto dim = static_cast<Eigen::Index>(pow3(n_sites));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (uint32_t j = 0; j < n_sites; ++j)
        add_pair_coupling(h, n_sites, j, (j + 1) % n_sites, xy_rules);
    return h;
}

Eigen::MatrixXd dense_full_hamiltonian_alternating(uint32_t n_sites) {
    if (n_sites < 2 || n_sites > 8)
        throw resource_limit_error("dense full-space build is guarded at 2 <= N <= 8");
    if (n_sites % 2 != 0)
        throw input_error("the alternating form requires an even chain length");
    const auto dim = static_cast<Eigen::Index>(pow3(n_sites));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (uint32_t k = 0; 2 * k < n_sites; ++k) {
        add_pair_coupling(h, n_sites, 2 * k, 2 * k + 1, xx_rules);
        add_pair_coupling(h, n_sites, 2 * k + 1, (2 * k + 2) % n_sites, yy_rules);
    }
    return h;
}

FormEquivalenceReport verify_form_equivalence(uint32_t n_sites) {
    if (n_sites % 2 != 0) throw input_error("form comparison requires an even chain length");
    const Eigen::MatrixXd a = dense_full_hamiltonian_alternating(n_sites);
    const Eigen::MatrixXd b = dense_full_hamiltonian_uniform(n_sites);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(a, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(b, Eigen::EigenvaluesOnly);
    const double dev = (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff();
    return {n_sites, dev};
}

} // namespace kitaev
