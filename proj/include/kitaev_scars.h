/* C interface of the spin-1 Kitaev chain scars library.
 *
 * All functions return a kts_status; outputs go through pointers. Handles are
 * opaque and must be released with the matching _free function. Error
 * messages for the calling thread are available via kts_last_error.
 */
#ifndef KITAEV_SCARS_H
#define KITAEV_SCARS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kts_status {
    KTS_OK = 0,
    KTS_ERROR_INTERNAL = 1,
    KTS_ERROR_INPUT = 2,
    KTS_ERROR_RESOURCE_LIMIT = 3,
    KTS_ERROR_VERIFICATION = 4
} kts_status;

const char* kts_version(void);

/* Message of the last failing call on this thread; empty string if none. */
const char* kts_last_error(void);

/* Caps the worker count of the loops that parallelize over eigenstates.
 * 0 restores the hardware default. */
void kts_set_max_threads(int n);

/* ---------------------------------------------------------------- sectors */

typedef struct kts_sector_table kts_sector_table;

/* Assigns all 3^n product states to their sectors (guarded at n <= 14). */
kts_status kts_enumerate_sectors(uint32_t n_sites, kts_sector_table** out);
size_t kts_sector_table_size(const kts_sector_table* table);
/* Label of row i as a '+'/'-' string written into buf (>= n_sites+1 bytes). */
kts_status kts_sector_table_label(const kts_sector_table* table, size_t i, char* buf,
                                  size_t buf_len);
kts_status kts_sector_table_dim(const kts_sector_table* table, size_t i, uint64_t* dim);
void kts_sector_table_free(kts_sector_table* table);

/* ------------------------------------------------------------------ basis */

typedef struct kts_basis kts_basis;

/* Lexicographically smallest configuration whose bond parities match a
 * '+'/'-' pattern tiled to n_sites; KTS_ERROR_INPUT when the pattern is not
 * realizable or does not divide n_sites. buf needs n_sites+1 bytes. */
kts_status kts_root_for_pattern(const char* pattern, uint32_t n_sites, char* buf,
                                size_t buf_len);

/* Breadth-first closure of the sector reached from a root configuration
 * given as a string over "xyz". */
kts_status kts_basis_build(const char* root_config, kts_basis** out);
uint32_t kts_basis_dim(const kts_basis* basis);
uint32_t kts_basis_n_sites(const kts_basis* basis);
/* Sector label as '+'/'-' into buf (>= n_sites+1 bytes). */
kts_status kts_basis_label(const kts_basis* basis, char* buf, size_t buf_len);
/* Configuration string of basis state i into buf (>= n_sites+1 bytes). */
kts_status kts_basis_state(const kts_basis* basis, uint32_t i, char* buf, size_t buf_len);
kts_status kts_basis_depth(const kts_basis* basis, uint32_t i, uint32_t* depth);
/* KTS_ERROR_INPUT if the configuration is not a basis member. */
kts_status kts_basis_index_of(const kts_basis* basis, const char* config, uint32_t* index);
/* Uniform draw over the basis states, reproducible under the seed. */
kts_status kts_basis_random_state(const kts_basis* basis, uint64_t seed, char* buf,
                                  size_t buf_len);
void kts_basis_free(kts_basis* basis);

/* ------------------------------------------------------------ hamiltonian */

typedef struct kts_hamiltonian kts_hamiltonian;

kts_status kts_hamiltonian_build(const kts_basis* basis, kts_hamiltonian** out);
uint32_t kts_hamiltonian_dim(const kts_hamiltonian* h);
/* Stored entry count; the symmetric matrix has twice as many nonzeros. */
size_t kts_hamiltonian_nnz(const kts_hamiltonian* h);
/* Entry i as (row, col, amp) with row < col and amp = +-1. */
kts_status kts_hamiltonian_entry(const kts_hamiltonian* h, size_t i, uint32_t* row,
                                 uint32_t* col, double* amp);
/* y = H x over real vectors of length dim. */
kts_status kts_hamiltonian_matvec(const kts_hamiltonian* h, const double* x, double* y);
void kts_hamiltonian_free(kts_hamiltonian* h);

/* Maximal spectral deviation between the alternating-bond and uniform forms
 * of the chain over the full product space (N even, N <= 8). */
kts_status kts_form_check(uint32_t n_sites, double* max_deviation);

/* --------------------------------------------------------------- dynamics */

typedef struct kts_evolution kts_evolution;

/* Evolves a product basis state and samples fidelity, state transfer onto
 * `target_config` (optional, pass NULL to skip) and half-chain entanglement
 * entropy on the grid t = 0, dt, ..., t_max. Dense propagation when the
 * dimension is at most dense_ceiling, Krylov stepping otherwise. */
kts_status kts_evolve(const kts_basis* basis, const kts_hamiltonian* h,
                      const char* initial_config, const char* target_config, double t_max,
                      double dt, int krylov_dim, uint32_t dense_ceiling, int sample_entropy,
                      kts_evolution** out);
size_t kts_evolution_length(const kts_evolution* ev);
/* "dense" or "krylov" */
const char* kts_evolution_method(const kts_evolution* ev);
kts_status kts_evolution_times(const kts_evolution* ev, double* out);
kts_status kts_evolution_fidelity(const kts_evolution* ev, double* out);
/* KTS_ERROR_INPUT when the evolution was run without a target / entropy. */
kts_status kts_evolution_transfer(const kts_evolution* ev, double* out);
kts_status kts_evolution_entropy(const kts_evolution* ev, double* out);
void kts_evolution_free(kts_evolution* ev);

/* -------------------------------------------------- spectrum + observables */

typedef struct kts_spectrum kts_spectrum;

kts_status kts_full_diagonalize(const kts_hamiltonian* h, uint32_t dense_ceiling,
                                kts_spectrum** out);
uint32_t kts_spectrum_size(const kts_spectrum* spec);
kts_status kts_spectrum_energies(const kts_spectrum* spec, double* out);
/* Half-chain entanglement entropy of every eigenstate (N even). */
kts_status kts_spectrum_entropies(const kts_spectrum* spec, const kts_basis* basis,
                                  double* out);
/* Squared overlaps of a product basis state with every eigenstate. */
kts_status kts_spectrum_overlaps(const kts_spectrum* spec, const kts_basis* basis,
                                 const char* initial_config, double* out);
void kts_spectrum_free(kts_spectrum* spec);

/* Mean gap-ratio statistic. momentum_resolve != 0 block-diagonalizes by
 * translation by the sector period first. */
kts_status kts_level_statistics(const kts_basis* basis, const kts_hamiltonian* h,
                                int momentum_resolve, uint32_t dense_ceiling, double* mean_r,
                                size_t* n_blocks);

/* -------------------------------------------------------------------- fsa */

typedef struct kts_fsa kts_fsa;

/* Root-relative forward/backward split and the forward-scattering ladder. */
kts_status kts_fsa_build(const kts_basis* basis, kts_fsa** out);
/* Number of ladder vectors; N+1 when the recursion closes fully. */
size_t kts_fsa_size(const kts_fsa* f);
/* 1 when the forward recursion terminated by annihilation. */
int kts_fsa_closed(const kts_fsa* f);
/* Endpoint configuration when the final ladder vector is a single basis
 * state; KTS_ERROR_INPUT otherwise. */
kts_status kts_fsa_endpoint(const kts_fsa* f, char* buf, size_t buf_len);
/* betas has size kts_fsa_size(f) - 1. */
kts_status kts_fsa_betas(const kts_fsa* f, double* out);
/* Forward transitions that do not raise the root distance by one. */
int64_t kts_fsa_depth_violations(const kts_fsa* f);
/* Energies and squared overlaps of the tridiagonal eigenstates against a
 * product basis state; both arrays sized kts_fsa_size(f). */
kts_status kts_fsa_overlay(const kts_fsa* f, const kts_basis* basis,
                           const char* initial_config, double* energies, double* overlaps);
void kts_fsa_free(kts_fsa* f);

/* -------------------------------------------------------------------- pxp */

typedef struct kts_pxp_report {
    uint32_t n_sites;
    uint64_t dim_kitaev;
    uint64_t dim_pxp;
    /* 1 when intertwining and spectra were checked (N <= 14), else only the
     * dimensions are compared. */
    int full_check;
    int64_t intertwining_violations;
    double max_spectral_deviation;
} kts_pxp_report;

/* Verifies the duality between the all-plus sector and the constrained
 * spin-1/2 chain on the dual lattice. */
kts_status kts_pxp_verify(uint32_t n_sites, kts_pxp_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KITAEV_SCARS_H */
