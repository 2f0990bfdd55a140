#include "doctest.h"

#include <random>

#include "kitaev/hamiltonian.hpp"
#include "kitaev/sector_basis.hpp"
#include "test_oracles.hpp"

using namespace kitaev;

TEST_CASE("bond action on all nine two-site configurations matches the dense matrix") {
    const Eigen::MatrixXcd bond = oracle::bond_matrix();
    for (uint8_t l = 0; l < 3; ++l) {
        for (uint8_t r = 0; r < 3; ++r) {
            const SpinConfig in(static_cast<uint64_t>(l) | (static_cast<uint64_t>(r) << 2), 2);
            const auto im = apply_bond_term(in, 0);

            // the dense column of the input pair
            const Eigen::VectorXcd col = bond.col(3 * l + r);
            int nonzeros = 0;
            for (int out = 0; out < 9; ++out) {
                if (std::abs(col[out]) < 1e-14) continue;
                ++nonzeros;
                REQUIRE(im.has_value());
                CHECK(im->target.site(0) == out / 3);
                CHECK(im->target.site(1) == out % 3);
                CHECK(static_cast<double>(im->amplitude) == doctest::Approx(col[out].real()));
                CHECK(std::abs(col[out].imag()) < 1e-14);
            }
            if (nonzeros == 0) CHECK_FALSE(im.has_value());
        }
    }
}

TEST_CASE("reference bond transitions") {
    const SpinConfig yx = SpinConfig::from_string("yxzz");
    const auto im = apply_bond_term(yx, 0);
    REQUIRE(im.has_value());
    CHECK(im->target.to_string() == "zzzz");
    CHECK(im->amplitude == +1);

    const auto im2 = apply_bond_term(SpinConfig::from_string("yzxx"), 0);
    REQUIRE(im2.has_value());
    CHECK(im2->target.to_string() == "zxxx");
    CHECK(im2->amplitude == -1);

    CHECK_FALSE(apply_bond_term(SpinConfig::from_string("xxxx"), 2).has_value());
    CHECK_THROWS_AS(apply_bond_term(yx, 4), input_error);
}

TEST_CASE("full application concatenates the bond images") {
    const auto images = apply_hamiltonian(SpinConfig::from_string("yxyx"));
    REQUIRE(images.size() == 2);
    CHECK(images[0].bond == 0);
    CHECK(images[0].target.to_string() == "zzyx");
    CHECK(images[0].amplitude == +1);
    CHECK(images[1].bond == 2);
    CHECK(images[1].target.to_string() == "yxzz");

    CHECK(apply_hamiltonian(SpinConfig::from_string("xxxx")).empty());
}

TEST_CASE("bond images preserve the sector label") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const uint32_t n = 3 + static_cast<uint32_t>(rng() % 8);
        uint64_t bits = 0;
        for (uint32_t j = 0; j < n; ++j) bits |= (rng() % 3) << (2 * j);
        const SpinConfig c(bits, n);
        for (const BondImage& im : apply_hamiltonian(c))
            CHECK(sector_label(im.target) == sector_label(c));
    }
}

TEST_CASE("sparse matrix construction and validation") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const SparseHamiltonian h = build_sector_hamiltonian(basis);
    CHECK(h.dim() == basis.dim());

    for (const auto& e : h.entries()) {
        CHECK(e.row < e.col);  // no diagonal, stored once
        CHECK((e.sign == 1 || e.sign == -1));
    }

    // symmetric expansion, zero diagonal, row sparsity
    const Eigen::MatrixXd dense = h.to_dense();
    CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(dense.diagonal().cwiseAbs().maxCoeff() == 0.0);
    for (uint32_t r = 0; r < h.dim(); ++r) {
        int nnz = 0;
        for (uint32_t c = 0; c < h.dim(); ++c)
            if (dense(r, c) != 0.0) ++nnz;
        CHECK(nnz <= 6);
    }

    CHECK_THROWS_AS(SparseHamiltonian(4, {{2, 1, 1}}), input_error);
    CHECK_THROWS_AS(SparseHamiltonian(4, {{1, 1, 1}}), input_error);
    CHECK_THROWS_AS(SparseHamiltonian(4, {{0, 1, 2}}), input_error);
}

TEST_CASE("sector matrix equals the dense oracle") {
    const SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    const SparseHamiltonian h = build_sector_hamiltonian(basis);
    const Eigen::MatrixXd dense = h.to_dense();

    Eigen::MatrixXd expect(basis.dim(), basis.dim());
    for (uint32_t i = 0; i < basis.dim(); ++i)
        for (uint32_t j = 0; j < basis.dim(); ++j)
            expect(i, j) = oracle::element(basis.states[i], basis.states[j]);
    CHECK((dense - expect).cwiseAbs().maxCoeff() == 0.0);

    // matvec against the oracle matrix on a random vector
    std::mt19937_64 rng(3);
    Eigen::VectorXd v(basis.dim());
    for (uint32_t i = 0; i < basis.dim(); ++i)
        v[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
    CHECK((h.apply(v) - expect * v).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd wrong(basis.dim() + 1);
    CHECK_THROWS_AS(h.apply(wrong), input_error);
}

TEST_CASE("a truncated basis is rejected as unclosed") {
    SectorBasis basis = build_sector_basis(SpinConfig::tile("yxy", 6));
    basis.index.erase(basis.states.back());
    basis.states.pop_back();
    basis.depths.pop_back();
    CHECK_THROWS_AS(build_sector_hamiltonian(basis), closure_error);
}

TEST_CASE("full-space matrix is block diagonal over sectors") {
    const uint32_t n = 4;
    const Eigen::MatrixXd h = dense_full_hamiltonian_uniform(n);
    const auto configs = oracle::all_configs(n);
    for (size_t a = 0; a < configs.size(); ++a)
        for (size_t b = 0; b < configs.size(); ++b)
            if (h(a, b) != 0.0) CHECK(sector_label(configs[a]) == sector_label(configs[b]));
}

TEST_CASE("full-space matrix matches the element oracle") {
    const uint32_t n = 3;
    const Eigen::MatrixXd h = dense_full_hamiltonian_uniform(n);
    const auto configs = oracle::all_configs(n);
    for (size_t a = 0; a < configs.size(); ++a)
        for (size_t b = 0; b < configs.size(); ++b)
            CHECK(h(a, b) == doctest::Approx(oracle::element(configs[a], configs[b])).epsilon(1e-14));
}

TEST_CASE("alternating and uniform forms share their spectrum") {
    CHECK(verify_form_equivalence(2).max_spectral_deviation < 1e-12);
    CHECK(verify_form_equivalence(4).max_spectral_deviation < 1e-10);
    CHECK(verify_form_equivalence(6).max_spectral_deviation < 1e-10);
    CHECK_THROWS_AS(verify_form_equivalence(5), input_error);
    CHECK_THROWS_AS(verify_form_equivalence(10), resource_limit_error);
}
