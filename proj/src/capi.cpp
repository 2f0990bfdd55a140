#include "kitaev_scars.h"

#include <cstring>
#include <memory>
#include <string>

#include "kitaev/dynamics.hpp"
#include "kitaev/fsa.hpp"
#include "kitaev/observables.hpp"
#include "kitaev/pxp.hpp"
#include "kitaev/sector.hpp"
#include "kitaev/sector_basis.hpp"

using namespace kitaev;

struct kts_sector_table {
    std::vector<SectorCount> rows;
};
struct kts_basis {
    SectorBasis basis;
};
struct kts_hamiltonian {
    SparseHamiltonian h;
};
struct kts_evolution {
    EvolutionResult result;
};
struct kts_spectrum {
    Spectrum spec;
};
struct kts_fsa {
    FsaLadder ladder;
    int64_t depth_violations;
};

namespace {

thread_local std::string g_last_error;

kts_status fail(kts_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
kts_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return KTS_OK;
    } catch (const input_error& e) {
        return fail(KTS_ERROR_INPUT, e.what());
    } catch (const resource_limit_error& e) {
        return fail(KTS_ERROR_RESOURCE_LIMIT, e.what());
    } catch (const closure_error& e) {
        return fail(KTS_ERROR_VERIFICATION, e.what());
    } catch (const std::exception& e) {
        return fail(KTS_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(KTS_ERROR_INTERNAL, "unknown error");
    }
}

kts_status copy_string(const std::string& s, char* buf, size_t buf_len) {
    if (buf == nullptr || buf_len < s.size() + 1)
        return fail(KTS_ERROR_INPUT, "output buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return KTS_OK;
}

} // namespace

extern "C" {

const char* kts_version(void) { return "1.0.0"; }

const char* kts_last_error(void) { return g_last_error.c_str(); }

void kts_set_max_threads(int n) { set_max_threads(n); }

/* sectors */

kts_status kts_enumerate_sectors(uint32_t n_sites, kts_sector_table** out) {
    if (!out) return fail(KTS_ERROR_INPUT, "null output pointer");
    return guarded([&] { *out = new kts_sector_table{enumerate_sectors(n_sites)}; });
}

size_t kts_sector_table_size(const kts_sector_table* table) {
    return table ? table->rows.size() : 0;
}

kts_status kts_sector_table_label(const kts_sector_table* table, size_t i, char* buf,
                                  size_t buf_len) {
    if (!table || i >= table->rows.size()) return fail(KTS_ERROR_INPUT, "row out of range");
    return copy_string(table->rows[i].label.to_string(), buf, buf_len);
}

kts_status kts_sector_table_dim(const kts_sector_table* table, size_t i, uint64_t* dim) {
    if (!table || !dim || i >= table->rows.size())
        return fail(KTS_ERROR_INPUT, "row out of range");
    *dim = table->rows[i].dim;
    return KTS_OK;
}

void kts_sector_table_free(kts_sector_table* table) { delete table; }

/* basis */

kts_status kts_root_for_pattern(const char* pattern, uint32_t n_sites, char* buf,
                                size_t buf_len) {
    if (!pattern) return fail(KTS_ERROR_INPUT, "null pattern");
    std::string root;
    const kts_status run = guarded([&] {
        const SectorLabel label = SectorLabel::tile(pattern, n_sites);
        const auto config = find_root_config(label);
        if (!config)
            throw input_error("no configuration realizes the sector pattern " +
                              label.to_string());
        root = config->to_string();
    });
    if (run != KTS_OK) return run;
    return copy_string(root, buf, buf_len);
}

kts_status kts_basis_build(const char* root_config, kts_basis** out) {
    if (!root_config || !out) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        *out = new kts_basis{build_sector_basis(SpinConfig::from_string(root_config))};
    });
}

uint32_t kts_basis_dim(const kts_basis* basis) { return basis ? basis->basis.dim() : 0; }

uint32_t kts_basis_n_sites(const kts_basis* basis) {
    return basis ? basis->basis.root().n_sites() : 0;
}

kts_status kts_basis_label(const kts_basis* basis, char* buf, size_t buf_len) {
    if (!basis) return fail(KTS_ERROR_INPUT, "null basis");
    return copy_string(basis->basis.label.to_string(), buf, buf_len);
}

kts_status kts_basis_state(const kts_basis* basis, uint32_t i, char* buf, size_t buf_len) {
    if (!basis || i >= basis->basis.dim()) return fail(KTS_ERROR_INPUT, "state out of range");
    return copy_string(basis->basis.states[i].to_string(), buf, buf_len);
}

kts_status kts_basis_depth(const kts_basis* basis, uint32_t i, uint32_t* depth) {
    if (!basis || !depth || i >= basis->basis.dim())
        return fail(KTS_ERROR_INPUT, "state out of range");
    *depth = basis->basis.depths[i];
    return KTS_OK;
}

kts_status kts_basis_index_of(const kts_basis* basis, const char* config, uint32_t* index) {
    if (!basis || !config || !index) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        const auto idx = basis->basis.index_of(SpinConfig::from_string(config));
        if (!idx) throw input_error(std::string(config) + " is not in the basis");
        *index = *idx;
    });
}

kts_status kts_basis_random_state(const kts_basis* basis, uint64_t seed, char* buf,
                                  size_t buf_len) {
    if (!basis) return fail(KTS_ERROR_INPUT, "null basis");
    std::string drawn;
    const kts_status run = guarded([&] { drawn = random_basis_state(basis->basis, seed).to_string(); });
    if (run != KTS_OK) return run;
    return copy_string(drawn, buf, buf_len);
}

void kts_basis_free(kts_basis* basis) { delete basis; }

/* hamiltonian */

kts_status kts_hamiltonian_build(const kts_basis* basis, kts_hamiltonian** out) {
    if (!basis || !out) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] { *out = new kts_hamiltonian{build_sector_hamiltonian(basis->basis)}; });
}

uint32_t kts_hamiltonian_dim(const kts_hamiltonian* h) { return h ? h->h.dim() : 0; }

size_t kts_hamiltonian_nnz(const kts_hamiltonian* h) { return h ? h->h.nnz_stored() : 0; }

kts_status kts_hamiltonian_entry(const kts_hamiltonian* h, size_t i, uint32_t* row,
                                 uint32_t* col, double* amp) {
    if (!h || !row || !col || !amp || i >= h->h.nnz_stored())
        return fail(KTS_ERROR_INPUT, "entry out of range");
    const auto& e = h->h.entries()[i];
    *row = e.row;
    *col = e.col;
    *amp = static_cast<double>(e.sign);
    return KTS_OK;
}

kts_status kts_hamiltonian_matvec(const kts_hamiltonian* h, const double* x, double* y) {
    if (!h || !x || !y) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] { h->h.matvec(x, y); });
}

void kts_hamiltonian_free(kts_hamiltonian* h) { delete h; }

kts_status kts_form_check(uint32_t n_sites, double* max_deviation) {
    if (!max_deviation) return fail(KTS_ERROR_INPUT, "null output pointer");
    return guarded(
        [&] { *max_deviation = verify_form_equivalence(n_sites).max_spectral_deviation; });
}

/* dynamics */

kts_status kts_evolve(const kts_basis* basis, const kts_hamiltonian* h,
                      const char* initial_config, const char* target_config, double t_max,
                      double dt, int krylov_dim, uint32_t dense_ceiling, int sample_entropy,
                      kts_evolution** out) {
    if (!basis || !h || !initial_config || !out) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        EvolveOptions opts;
        opts.grid = {t_max, dt};
        opts.krylov.m = krylov_dim;
        opts.dense_ceiling = dense_ceiling;
        opts.sample_entropy = sample_entropy != 0;
        std::optional<SpinConfig> target;
        if (target_config) target = SpinConfig::from_string(target_config);
        *out = new kts_evolution{run_evolution(basis->basis, h->h,
                                               SpinConfig::from_string(initial_config), target,
                                               opts)};
    });
}

size_t kts_evolution_length(const kts_evolution* ev) {
    return ev ? ev->result.fidelity.times.size() : 0;
}

const char* kts_evolution_method(const kts_evolution* ev) {
    return ev ? ev->result.method.c_str() : "";
}

kts_status kts_evolution_times(const kts_evolution* ev, double* out) {
    if (!ev || !out) return fail(KTS_ERROR_INPUT, "null argument");
    std::memcpy(out, ev->result.fidelity.times.data(),
                ev->result.fidelity.times.size() * sizeof(double));
    return KTS_OK;
}

kts_status kts_evolution_fidelity(const kts_evolution* ev, double* out) {
    if (!ev || !out) return fail(KTS_ERROR_INPUT, "null argument");
    std::memcpy(out, ev->result.fidelity.values.data(),
                ev->result.fidelity.values.size() * sizeof(double));
    return KTS_OK;
}

kts_status kts_evolution_transfer(const kts_evolution* ev, double* out) {
    if (!ev || !out) return fail(KTS_ERROR_INPUT, "null argument");
    if (!ev->result.transfer) return fail(KTS_ERROR_INPUT, "evolution was run without a target");
    std::memcpy(out, ev->result.transfer->values.data(),
                ev->result.transfer->values.size() * sizeof(double));
    return KTS_OK;
}

kts_status kts_evolution_entropy(const kts_evolution* ev, double* out) {
    if (!ev || !out) return fail(KTS_ERROR_INPUT, "null argument");
    if (!ev->result.entropy) return fail(KTS_ERROR_INPUT, "evolution was run without entropy");
    std::memcpy(out, ev->result.entropy->values.data(),
                ev->result.entropy->values.size() * sizeof(double));
    return KTS_OK;
}

void kts_evolution_free(kts_evolution* ev) { delete ev; }

/* spectrum + observables */

kts_status kts_full_diagonalize(const kts_hamiltonian* h, uint32_t dense_ceiling,
                                kts_spectrum** out) {
    if (!h || !out) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] { *out = new kts_spectrum{full_diagonalize(h->h, dense_ceiling)}; });
}

uint32_t kts_spectrum_size(const kts_spectrum* spec) {
    return spec ? static_cast<uint32_t>(spec->spec.energies.size()) : 0;
}

kts_status kts_spectrum_energies(const kts_spectrum* spec, double* out) {
    if (!spec || !out) return fail(KTS_ERROR_INPUT, "null argument");
    std::memcpy(out, spec->spec.energies.data(),
                static_cast<size_t>(spec->spec.energies.size()) * sizeof(double));
    return KTS_OK;
}

kts_status kts_spectrum_entropies(const kts_spectrum* spec, const kts_basis* basis,
                                  double* out) {
    if (!spec || !basis || !out) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        const auto points = ee_scatter(spec->spec, basis->basis);
        for (size_t k = 0; k < points.size(); ++k) out[k] = points[k].entropy;
    });
}

kts_status kts_spectrum_overlaps(const kts_spectrum* spec, const kts_basis* basis,
                                 const char* initial_config, double* out) {
    if (!spec || !basis || !initial_config || !out)
        return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        const auto tower =
            overlap_tower(spec->spec, basis->basis, SpinConfig::from_string(initial_config));
        std::memcpy(out, tower.overlaps.data(), tower.overlaps.size() * sizeof(double));
    });
}

void kts_spectrum_free(kts_spectrum* spec) { delete spec; }

kts_status kts_level_statistics(const kts_basis* basis, const kts_hamiltonian* h,
                                int momentum_resolve, uint32_t dense_ceiling, double* mean_r,
                                size_t* n_blocks) {
    if (!basis || !h || !mean_r) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        const LevelStats stats =
            level_statistics(basis->basis, h->h, momentum_resolve != 0, dense_ceiling);
        *mean_r = stats.mean_r;
        if (n_blocks) *n_blocks = stats.block_dims.size();
    });
}

/* fsa */

kts_status kts_fsa_build(const kts_basis* basis, kts_fsa** out) {
    if (!basis || !out) return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        const HamiltonianSplit split = split_hamiltonian(basis->basis, basis->basis.root());
        *out = new kts_fsa{build_ladder(basis->basis, split), split.depth_violations()};
    });
}

size_t kts_fsa_size(const kts_fsa* f) { return f ? f->ladder.size() : 0; }

int kts_fsa_closed(const kts_fsa* f) { return f && f->ladder.closed ? 1 : 0; }

kts_status kts_fsa_endpoint(const kts_fsa* f, char* buf, size_t buf_len) {
    if (!f) return fail(KTS_ERROR_INPUT, "null handle");
    if (!f->ladder.endpoint)
        return fail(KTS_ERROR_INPUT, "final ladder vector is not a single basis state");
    return copy_string(f->ladder.endpoint->to_string(), buf, buf_len);
}

kts_status kts_fsa_betas(const kts_fsa* f, double* out) {
    if (!f || !out) return fail(KTS_ERROR_INPUT, "null argument");
    std::memcpy(out, f->ladder.betas.data(), f->ladder.betas.size() * sizeof(double));
    return KTS_OK;
}

int64_t kts_fsa_depth_violations(const kts_fsa* f) { return f ? f->depth_violations : -1; }

kts_status kts_fsa_overlay(const kts_fsa* f, const kts_basis* basis,
                           const char* initial_config, double* energies, double* overlaps) {
    if (!f || !basis || !initial_config || !energies || !overlaps)
        return fail(KTS_ERROR_INPUT, "null argument");
    return guarded([&] {
        const auto points =
            fsa_overlay(f->ladder, basis->basis, SpinConfig::from_string(initial_config));
        for (size_t k = 0; k < points.size(); ++k) {
            energies[k] = points[k].energy;
            overlaps[k] = points[k].overlap;
        }
    });
}

void kts_fsa_free(kts_fsa* f) { delete f; }

/* pxp */

kts_status kts_pxp_verify(uint32_t n_sites, kts_pxp_report* out) {
    if (!out) return fail(KTS_ERROR_INPUT, "null output pointer");
    return guarded([&] {
        const PxpReport report = verify_pxp_equivalence(n_sites);
        out->n_sites = report.n_sites;
        out->dim_kitaev = report.dim_kitaev;
        out->dim_pxp = report.dim_pxp;
        out->full_check = report.full_check ? 1 : 0;
        out->intertwining_violations = report.intertwining_violations;
        out->max_spectral_deviation = report.max_spectral_deviation;
    });
}

} // extern "C"
