#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "kitaev_scars.h"

namespace {

struct BasisGuard {
    kts_basis* ptr = nullptr;
    ~BasisGuard() { kts_basis_free(ptr); }
};
struct HamGuard {
    kts_hamiltonian* ptr = nullptr;
    ~HamGuard() { kts_hamiltonian_free(ptr); }
};

} // namespace

TEST_CASE("c interface: errors carry codes and messages") {
    kts_basis* basis = nullptr;
    CHECK(kts_basis_build("yxq", &basis) == KTS_ERROR_INPUT);
    CHECK(std::strlen(kts_last_error()) > 0);
    CHECK(kts_basis_build(nullptr, &basis) == KTS_ERROR_INPUT);

    kts_sector_table* table = nullptr;
    CHECK(kts_enumerate_sectors(15, &table) == KTS_ERROR_RESOURCE_LIMIT);
    CHECK(kts_version() != nullptr);
}

TEST_CASE("c interface: sector table") {
    kts_sector_table* table = nullptr;
    REQUIRE(kts_enumerate_sectors(6, &table) == KTS_OK);
    uint64_t total = 0, allplus = 0;
    char label[8];
    for (size_t i = 0; i < kts_sector_table_size(table); ++i) {
        uint64_t dim = 0;
        REQUIRE(kts_sector_table_label(table, i, label, sizeof(label)) == KTS_OK);
        REQUIRE(kts_sector_table_dim(table, i, &dim) == KTS_OK);
        total += dim;
        if (std::string(label) == "++++++") allplus = dim;
    }
    CHECK(total == 729);
    CHECK(allplus == 18);
    char tiny[3];
    CHECK(kts_sector_table_label(table, 0, tiny, sizeof(tiny)) == KTS_ERROR_INPUT);
    kts_sector_table_free(table);
}

TEST_CASE("c interface: basis, hamiltonian and evolution round trip") {
    BasisGuard basis;
    REQUIRE(kts_basis_build("yxyyxy", &basis.ptr) == KTS_OK);
    CHECK(kts_basis_dim(basis.ptr) == 14);
    CHECK(kts_basis_n_sites(basis.ptr) == 6);

    char buf[16];
    REQUIRE(kts_basis_label(basis.ptr, buf, sizeof(buf)) == KTS_OK);
    CHECK(std::string(buf) == "++-++-");
    REQUIRE(kts_basis_state(basis.ptr, 0, buf, sizeof(buf)) == KTS_OK);
    CHECK(std::string(buf) == "yxyyxy");

    uint32_t idx = 99;
    REQUIRE(kts_basis_index_of(basis.ptr, "yxyyxy", &idx) == KTS_OK);
    CHECK(idx == 0);
    CHECK(kts_basis_index_of(basis.ptr, "zzzzzz", &idx) == KTS_ERROR_INPUT);

    uint32_t depth = 99;
    REQUIRE(kts_basis_depth(basis.ptr, 0, &depth) == KTS_OK);
    CHECK(depth == 0);

    char draw1[16], draw2[16];
    REQUIRE(kts_basis_random_state(basis.ptr, 9, draw1, sizeof(draw1)) == KTS_OK);
    REQUIRE(kts_basis_random_state(basis.ptr, 9, draw2, sizeof(draw2)) == KTS_OK);
    CHECK(std::string(draw1) == draw2);

    HamGuard ham;
    REQUIRE(kts_hamiltonian_build(basis.ptr, &ham.ptr) == KTS_OK);
    CHECK(kts_hamiltonian_dim(ham.ptr) == 14);
    REQUIRE(kts_hamiltonian_nnz(ham.ptr) > 0);
    uint32_t row = 0, col = 0;
    double amp = 0;
    REQUIRE(kts_hamiltonian_entry(ham.ptr, 0, &row, &col, &amp) == KTS_OK);
    CHECK(row < col);
    CHECK(std::abs(std::abs(amp) - 1.0) == 0.0);

    std::vector<double> x(14, 0.0), y(14, 0.0);
    x[0] = 1.0;
    REQUIRE(kts_hamiltonian_matvec(ham.ptr, x.data(), y.data()) == KTS_OK);
    double norm2 = 0;
    for (double v : y) norm2 += v * v;
    CHECK(norm2 == doctest::Approx(2.0));  // the root has two images

    kts_evolution* ev = nullptr;
    REQUIRE(kts_evolve(basis.ptr, ham.ptr, "yxyyxy", "xyxxyx", 2.0, 0.1, 30, 6000, 1, &ev) ==
            KTS_OK);
    const size_t len = kts_evolution_length(ev);
    CHECK(len == 21);
    CHECK(std::string(kts_evolution_method(ev)) == "dense");
    std::vector<double> t(len), f(len), tr(len), s(len);
    REQUIRE(kts_evolution_times(ev, t.data()) == KTS_OK);
    REQUIRE(kts_evolution_fidelity(ev, f.data()) == KTS_OK);
    REQUIRE(kts_evolution_transfer(ev, tr.data()) == KTS_OK);
    REQUIRE(kts_evolution_entropy(ev, s.data()) == KTS_OK);
    CHECK(t[0] == 0.0);
    CHECK(f[0] == doctest::Approx(1.0));
    CHECK(tr[0] == doctest::Approx(0.0));
    CHECK(std::abs(s[0]) < 1e-12);
    kts_evolution_free(ev);

    kts_evolution* no_target = nullptr;
    REQUIRE(kts_evolve(basis.ptr, ham.ptr, "yxyyxy", nullptr, 1.0, 0.5, 30, 6000, 0,
                       &no_target) == KTS_OK);
    CHECK(kts_evolution_transfer(no_target, tr.data()) == KTS_ERROR_INPUT);
    CHECK(kts_evolution_entropy(no_target, s.data()) == KTS_ERROR_INPUT);
    kts_evolution_free(no_target);
}

TEST_CASE("c interface: spectrum, overlaps and ladder") {
    BasisGuard basis;
    REQUIRE(kts_basis_build("yxyyxyyxyyxy", &basis.ptr) == KTS_OK);
    HamGuard ham;
    REQUIRE(kts_hamiltonian_build(basis.ptr, &ham.ptr) == KTS_OK);

    kts_spectrum* spec = nullptr;
    REQUIRE(kts_full_diagonalize(ham.ptr, 6000, &spec) == KTS_OK);
    const uint32_t dim = kts_spectrum_size(spec);
    CHECK(dim == 194);

    std::vector<double> energies(dim), overlaps(dim), entropies(dim);
    REQUIRE(kts_spectrum_energies(spec, energies.data()) == KTS_OK);
    for (uint32_t k = 1; k < dim; ++k) CHECK(energies[k] >= energies[k - 1]);
    REQUIRE(kts_spectrum_overlaps(spec, basis.ptr, "yxyyxyyxyyxy", overlaps.data()) == KTS_OK);
    double sum = 0;
    for (double o : overlaps) sum += o;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(kts_spectrum_entropies(spec, basis.ptr, entropies.data()) == KTS_OK);
    for (double e : entropies) CHECK(e >= -1e-10);

    double mean_r = 0;
    size_t blocks = 0;
    REQUIRE(kts_level_statistics(basis.ptr, ham.ptr, 1, 6000, &mean_r, &blocks) == KTS_OK);
    CHECK(blocks == 4);
    CHECK(mean_r > 0.0);
    CHECK(mean_r < 1.0);

    kts_fsa* fsa = nullptr;
    REQUIRE(kts_fsa_build(basis.ptr, &fsa) == KTS_OK);
    CHECK(kts_fsa_size(fsa) == 13);
    CHECK(kts_fsa_closed(fsa) == 1);
    CHECK(kts_fsa_depth_violations(fsa) == 0);
    char endpoint[16];
    REQUIRE(kts_fsa_endpoint(fsa, endpoint, sizeof(endpoint)) == KTS_OK);
    CHECK(std::string(endpoint) == "xyxxyxxyxxyx");
    std::vector<double> betas(12), fe(13), fo(13);
    REQUIRE(kts_fsa_betas(fsa, betas.data()) == KTS_OK);
    for (double b : betas) CHECK(b > 0.0);
    REQUIRE(kts_fsa_overlay(fsa, basis.ptr, "yxyyxyyxyyxy", fe.data(), fo.data()) == KTS_OK);
    double osum = 0;
    for (double o : fo) osum += o;
    CHECK(osum == doctest::Approx(1.0).epsilon(1e-9));
    kts_fsa_free(fsa);
    kts_spectrum_free(spec);
}

TEST_CASE("c interface: pattern roots, duality report and form check") {
    char buf[16];
    REQUIRE(kts_root_for_pattern("++-", 6, buf, sizeof(buf)) == KTS_OK);
    CHECK(std::string(buf) == "xyxxyx");  // lexicographically least in the sector
    CHECK(kts_root_for_pattern("++-", 7, buf, sizeof(buf)) == KTS_ERROR_INPUT);

    kts_pxp_report report{};
    REQUIRE(kts_pxp_verify(8, &report) == KTS_OK);
    CHECK(report.n_sites == 8);
    CHECK(report.full_check == 1);
    CHECK(report.dim_kitaev == 47);
    CHECK(report.dim_pxp == 47);
    CHECK(report.intertwining_violations == 0);
    CHECK(report.max_spectral_deviation < 1e-10);

    REQUIRE(kts_pxp_verify(18, &report) == KTS_OK);
    CHECK(report.full_check == 0);
    CHECK(report.dim_kitaev == report.dim_pxp);

    double dev = 1.0;
    REQUIRE(kts_form_check(4, &dev) == KTS_OK);
    CHECK(dev < 1e-10);
    CHECK(kts_form_check(5, &dev) == KTS_ERROR_INPUT);
    CHECK(kts_form_check(12, &dev) == KTS_ERROR_RESOURCE_LIMIT);
}
