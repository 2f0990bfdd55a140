#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "kitaev/fsa.hpp"
#include "kitaev/observables.hpp"
#include "kitaev/dynamics.hpp"
#include "kitaev/sector_basis.hpp"

using namespace kitaev;

namespace {

std::pair<uint8_t, uint8_t> pattern(const char* two) {
    return {site_from_char(two[0]), site_from_char(two[1])};
}

} // namespace

TEST_CASE("forward sources reproduce the term sets of the mixed sector") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const HamiltonianSplit split = split_hamiltonian(basis, basis.root());

    // bonds under the root's (y,x) pairs move forward from yx, the other
    // b=+1 bonds from zz, and the b=-1 bonds from yz with the negative sign
    const auto& src = split.forward_sources();
    CHECK(src[0] == pattern("yx"));
    CHECK(src[1] == pattern("zz"));
    CHECK(src[2] == pattern("yz"));
    CHECK(src[3] == pattern("yx"));
    CHECK(src[4] == pattern("zz"));
    CHECK(src[5] == pattern("yz"));
    CHECK(split.depth_violations() == 0);

    CHECK_THROWS_AS(split_hamiltonian(basis, SpinConfig::tile("z", 6)), input_error);
}

TEST_CASE("forward and backward parts annihilate the end states") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const HamiltonianSplit split = split_hamiltonian(basis, basis.root());

    Eigen::VectorXd root_vec = Eigen::VectorXd::Zero(basis.dim());
    root_vec[0] = 1.0;
    CHECK(split.apply_backward(root_vec).norm() == 0.0);

    const auto antipodal = basis.index_of(SpinConfig::tile("xyx", 6));
    REQUIRE(antipodal);
    Eigen::VectorXd anti_vec = Eigen::VectorXd::Zero(basis.dim());
    anti_vec[*antipodal] = 1.0;
    CHECK(split.apply_forward(anti_vec).norm() == 0.0);
}

TEST_CASE("the split is exact term bookkeeping") {
    for (uint32_t n : {6u, 9u}) {
        const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", n));
        const SparseHamiltonian h = build_sector_hamiltonian(basis);
        const HamiltonianSplit split = split_hamiltonian(basis, basis.root());
        for (uint32_t i = 0; i < basis.dim(); ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(basis.dim());
            e[i] = 1.0;
            const Eigen::VectorXd diff =
                split.apply_forward(e) + split.apply_backward(e) - h.apply(e);
            CHECK(diff.cwiseAbs().maxCoeff() == 0.0);  // signs add exactly
        }
    }
}

TEST_CASE("forward and backward parts are mutual adjoints") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const HamiltonianSplit split = split_hamiltonian(basis, basis.root());
    const uint32_t d = basis.dim();
    Eigen::MatrixXd plus(d, d), minus(d, d);
    for (uint32_t i = 0; i < d; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e[i] = 1.0;
        plus.col(i) = split.apply_forward(e);
        minus.col(i) = split.apply_backward(e);
    }
    CHECK((plus - minus.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ladder closes one step past the chain length") {
    for (uint32_t n : {6u, 9u, 12u}) {
        const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", n));
        const HamiltonianSplit split = split_hamiltonian(basis, basis.root());
        const FsaLadder ladder = build_ladder(basis, split);
        CHECK(ladder.closed);
        CHECK(ladder.size() == n + 1);
        CHECK_NOTHROW(require_full_closure(ladder));
        REQUIRE(ladder.endpoint.has_value());
        CHECK(*ladder.endpoint == SpinConfig::tile("xyx", n));
        for (double beta : ladder.betas) CHECK(beta > 0.0);

        // orthonormal ladder vectors
        for (size_t a = 0; a < ladder.size(); ++a)
            for (size_t b = 0; b <= a; ++b) {
                const double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(ladder.vectors[a].dot(ladder.vectors[b]) - want) < 1e-10);
            }
    }
}

TEST_CASE("the final ladder vector is the antipodal unit vector") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    const auto idx = basis.index_of(SpinConfig::tile("xyx", 6));
    REQUIRE(idx);
    CHECK(std::abs(ladder.vectors.back()[*idx] - 1.0) < 1e-9);
}

TEST_CASE("coefficients are mirror symmetric at small size") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    const size_t m = ladder.betas.size();
    for (size_t k = 0; k < m; ++k)
        CHECK(std::abs(ladder.betas[k] - ladder.betas[m - 1 - k]) < 1e-9);
}

TEST_CASE("the all-plus vacuum ladder closes early") {
    // forward propagation from the all-z state exhausts after about N/2
    // excitations, well short of N+1 vectors
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("z", 4));
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    CHECK(ladder.closed);
    CHECK(ladder.size() == 3);
    CHECK_THROWS_WITH_AS(require_full_closure(ladder),
                         "forward recursion closed after 3 vectors; expected 5", input_error);
}

TEST_CASE("tridiagonal matrix from toy coefficients") {
    FsaLadder toy;
    toy.root = SpinConfig::from_string("yx");
    toy.vectors.resize(3, Eigen::VectorXd::Zero(3));
    toy.betas = {1.0, 1.0};
    const Eigen::MatrixXd m = fsa_matrix(toy);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    CHECK(es.eigenvalues()[0] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(es.eigenvalues()[1] == doctest::Approx(0.0));
    CHECK(es.eigenvalues()[2] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("ladder spectra pair up and spread evenly") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 12));
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fsa_matrix(ladder));
    const Eigen::Index m = es.eigenvalues().size();
    for (Eigen::Index k = 0; k < m; ++k)
        CHECK(std::abs(es.eigenvalues()[k] + es.eigenvalues()[m - 1 - k]) < 1e-10);

    std::vector<double> gaps;
    for (Eigen::Index k = 0; k + 1 < m; ++k)
        gaps.push_back(es.eigenvalues()[k + 1] - es.eigenvalues()[k]);
    double mean = 0, var = 0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    CHECK(std::sqrt(var) / mean < 0.1);
}

TEST_CASE("overlay points exhaust the root weight") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 12));
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    const auto points = fsa_overlay(ladder, basis, basis.root());
    REQUIRE(points.size() == 13);
    double sum = 0;
    for (const auto& p : points) sum += p.overlap;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(fsa_overlay(ladder, basis, SpinConfig::tile("z", 12)), input_error);
}

TEST_CASE("overlay approximates the exact towers in the mixed sector") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 12));
    const SparseHamiltonian h = build_sector_hamiltonian(basis);
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    const auto overlay = fsa_overlay(ladder, basis, basis.root());
    const OverlapTower tower = overlap_tower(full_diagonalize(h), basis, basis.root());

    // bin width: the mean gap of the overlay energies
    std::vector<double> es;
    for (const auto& p : overlay) es.push_back(p.energy);
    std::sort(es.begin(), es.end());
    const double width = (es.back() - es.front()) / static_cast<double>(es.size() - 1);
    const auto tops = tower_tops(tower, width);
    REQUIRE(tops.size() >= 2);

    double top_spacing = 0;
    for (size_t k = 0; k + 1 < tops.size(); ++k) top_spacing += tops[k + 1].energy - tops[k].energy;
    top_spacing /= static_cast<double>(tops.size() - 1);

    for (const auto& p : overlay) {
        double nearest = 1e300;
        for (const auto& top : tops) nearest = std::min(nearest, std::abs(top.energy - p.energy));
        CHECK(nearest < 0.5 * top_spacing);
    }
}

TEST_CASE("overlay overestimates the towers of the weakly scarred sector") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yyxx", 12));
    const SparseHamiltonian h = build_sector_hamiltonian(basis);
    const FsaLadder ladder = build_ladder(basis, split_hamiltonian(basis, basis.root()));
    const auto overlay = fsa_overlay(ladder, basis, basis.root());
    const OverlapTower tower = overlap_tower(full_diagonalize(h), basis, basis.root());

    std::vector<double> es;
    for (const auto& p : overlay) es.push_back(p.energy);
    std::sort(es.begin(), es.end());
    const double width = (es.back() - es.front()) / static_cast<double>(es.size() - 1);
    const auto tops = tower_tops(tower, width);

    int exceeds = 0;
    for (const auto& p : overlay) {
        double nearest = 1e300, top_overlap = 0;
        for (const auto& top : tops)
            if (std::abs(top.energy - p.energy) < nearest) {
                nearest = std::abs(top.energy - p.energy);
                top_overlap = top.overlap;
            }
        if (top_overlap > 0 && p.overlap >= 2.0 * top_overlap) ++exceeds;
    }
    CHECK(exceeds >= 1);
}
