// Command-line driver over the C interface: builds sector bases, runs fidelity
// and entanglement pipelines, and emits CSV/JSON artifacts for plotting.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kitaev_scars.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct cli_error {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail_with(kts_status status) {
    throw cli_error{static_cast<int>(status), kts_last_error()};
}

void check(kts_status status) {
    if (status != KTS_OK) fail_with(status);
}

using basis_ptr = std::unique_ptr<kts_basis, decltype(&kts_basis_free)>;
using ham_ptr = std::unique_ptr<kts_hamiltonian, decltype(&kts_hamiltonian_free)>;
using spectrum_ptr = std::unique_ptr<kts_spectrum, decltype(&kts_spectrum_free)>;
using fsa_ptr = std::unique_ptr<kts_fsa, decltype(&kts_fsa_free)>;
using evolution_ptr = std::unique_ptr<kts_evolution, decltype(&kts_evolution_free)>;
using table_ptr = std::unique_ptr<kts_sector_table, decltype(&kts_sector_table_free)>;

// all numeric fields are printed with 12 significant digits
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cli_error{1, "cannot open " + path.string() + " for writing"};
    out << content;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string tile_to(const std::string& unit, uint32_t n, const char* what) {
    if (unit.empty() || n % unit.size() != 0)
        throw cli_error{2, std::string(what) + " '" + unit + "' does not tile to length " +
                               std::to_string(n)};
    std::string full;
    while (full.size() < n) full += unit;
    return full;
}

std::string xy_swap(std::string s) {
    for (char& c : s) {
        if (c == 'x') c = 'y';
        else if (c == 'y') c = 'x';
    }
    return s;
}

struct RunConfig {
    uint32_t n = 0;
    std::string pattern;  // '+'/'-' unit, optional
    std::string initial;  // "xyz" unit, optional
    double t_max = 40.0;
    double dt = 0.05;
    int krylov_dim = 30;
    uint64_t seed = 1;
    uint32_t dense_ceiling = 6000;
    bool random_initial = false;
    std::string out_dir = ".";

    fs::path out() const {
        fs::path p(out_dir);
        fs::create_directories(p);
        return p;
    }
};

void add_sector_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--n", cfg.n, "chain length (PBC)")->required();
    cmd->add_option("--pattern", cfg.pattern, "bond parity pattern over '+'/'-', tiled to n");
    cmd->add_option("--initial", cfg.initial, "root configuration over \"xyz\", tiled to n");
    cmd->add_option("--out", cfg.out_dir, "output directory");
}

// Root configuration from --initial / --pattern, validating consistency when
// both are given.
std::string resolve_root(const RunConfig& cfg) {
    if (cfg.n < 2 || cfg.n > 28) throw cli_error{2, "--n must be in [2, 28]"};
    if (cfg.initial.empty() && cfg.pattern.empty())
        throw cli_error{2, "one of --pattern or --initial is required"};

    std::string root;
    if (!cfg.initial.empty()) {
        root = tile_to(cfg.initial, cfg.n, "--initial");
    } else {
        std::vector<char> buf(cfg.n + 1);
        check(kts_root_for_pattern(cfg.pattern.c_str(), cfg.n, buf.data(), buf.size()));
        root = buf.data();
    }
    if (!cfg.pattern.empty() && !cfg.initial.empty()) {
        const std::string want = tile_to(cfg.pattern, cfg.n, "--pattern");
        kts_basis* raw = nullptr;
        check(kts_basis_build(root.c_str(), &raw));
        basis_ptr probe(raw, kts_basis_free);
        std::vector<char> buf(cfg.n + 1);
        check(kts_basis_label(probe.get(), buf.data(), buf.size()));
        if (want != buf.data())
            throw cli_error{2, "--initial lies in sector " + std::string(buf.data()) +
                                   ", not in --pattern sector " + want};
    }
    return root;
}

basis_ptr build_basis(const std::string& root) {
    kts_basis* raw = nullptr;
    check(kts_basis_build(root.c_str(), &raw));
    return basis_ptr(raw, kts_basis_free);
}

ham_ptr build_ham(const kts_basis* basis) {
    kts_hamiltonian* raw = nullptr;
    check(kts_hamiltonian_build(basis, &raw));
    return ham_ptr(raw, kts_hamiltonian_free);
}

json sidecar(const RunConfig& cfg, const kts_basis* basis, const std::string& initial,
             const std::string& method) {
    std::vector<char> buf(cfg.n + 1);
    check(kts_basis_label(basis, buf.data(), buf.size()));
    return json{{"n_sites", cfg.n},
                {"sector", std::string(buf.data())},
                {"initial", initial},
                {"method", method},
                {"krylov_dim", cfg.krylov_dim},
                {"seed", cfg.seed}};
}

void write_series_csv(const fs::path& path, const std::vector<double>& t,
                      const std::vector<double>& v) {
    std::string body = "t,value\n";
    for (size_t i = 0; i < t.size(); ++i) body += fmt(t[i]) + "," + fmt(v[i]) + "\n";
    write_text(path, body);
}

std::string log10_field(double overlap) {
    if (overlap <= 0.0) return "-inf";
    return fmt(std::log10(std::max(overlap, 1e-16)));
}

/* ------------------------------------------------------------ subcommands */

int cmd_sectors(const RunConfig& cfg) {
    kts_sector_table* raw = nullptr;
    check(kts_enumerate_sectors(cfg.n, &raw));
    table_ptr table(raw, kts_sector_table_free);

    const size_t rows = kts_sector_table_size(table.get());
    json out = {{"n_sites", cfg.n}, {"sectors", json::array()}};
    uint64_t total = 0;
    std::vector<char> buf(cfg.n + 1);
    for (size_t i = 0; i < rows; ++i) {
        uint64_t dim = 0;
        check(kts_sector_table_label(table.get(), i, buf.data(), buf.size()));
        check(kts_sector_table_dim(table.get(), i, &dim));
        std::printf("%s %llu\n", buf.data(), static_cast<unsigned long long>(dim));
        out["sectors"].push_back({{"label", std::string(buf.data())}, {"dim", dim}});
        total += dim;
    }
    out["total"] = total;
    std::printf("# %zu sectors, %llu states\n", rows, static_cast<unsigned long long>(total));
    write_json(cfg.out() / "sectors.json", out);
    return 0;
}

int cmd_basis(const RunConfig& cfg, bool dump_matrix) {
    const std::string root = resolve_root(cfg);
    basis_ptr basis = build_basis(root);
    const uint32_t dim = kts_basis_dim(basis.get());

    std::string body = "index,config,depth\n";
    std::vector<char> buf(cfg.n + 1);
    for (uint32_t i = 0; i < dim; ++i) {
        uint32_t depth = 0;
        check(kts_basis_state(basis.get(), i, buf.data(), buf.size()));
        check(kts_basis_depth(basis.get(), i, &depth));
        body += std::to_string(i) + "," + buf.data() + "," + std::to_string(depth) + "\n";
    }
    write_text(cfg.out() / "basis.csv", body);

    json meta = sidecar(cfg, basis.get(), root, "bfs");
    meta["dim"] = dim;
    write_json(cfg.out() / "basis.meta.json", meta);
    std::printf("root %s\nsector %s\ndim %u\n", root.c_str(),
                meta["sector"].get<std::string>().c_str(), dim);

    if (dump_matrix) {
        ham_ptr h = build_ham(basis.get());
        const size_t nnz = kts_hamiltonian_nnz(h.get());
        std::string m = std::to_string(dim) + " " + std::to_string(nnz) + "\n";
        for (size_t e = 0; e < nnz; ++e) {
            uint32_t r = 0, c = 0;
            double a = 0;
            check(kts_hamiltonian_entry(h.get(), e, &r, &c, &a));
            m += std::to_string(r) + " " + std::to_string(c) + " " + fmt(a) + "\n";
        }
        write_text(cfg.out() / "matrix.txt", m);
        std::printf("matrix dump: %zu stored entries\n", nnz);
    }
    return 0;
}

int cmd_evolve(const RunConfig& cfg, const std::string& target_flag) {
    const std::string root = resolve_root(cfg);
    basis_ptr basis = build_basis(root);
    ham_ptr h = build_ham(basis.get());

    std::string initial = root;
    if (cfg.random_initial) {
        std::vector<char> buf(cfg.n + 1);
        check(kts_basis_random_state(basis.get(), cfg.seed, buf.data(), buf.size()));
        initial = buf.data();
    }

    // default transfer target: the x<->y mirror of the initial state when it
    // lies in the sector, the initial state itself otherwise
    std::string target =
        target_flag.empty() ? xy_swap(initial) : tile_to(target_flag, cfg.n, "--target");
    uint32_t idx = 0;
    const bool target_in_basis =
        kts_basis_index_of(basis.get(), target.c_str(), &idx) == KTS_OK;
    if (!target_flag.empty() && !target_in_basis)
        throw cli_error{2, "--target " + target + " is not in the sector basis"};
    if (target_flag.empty() && !target_in_basis) target = initial;

    kts_evolution* raw = nullptr;
    check(kts_evolve(basis.get(), h.get(), initial.c_str(), target.c_str(), cfg.t_max, cfg.dt,
                     cfg.krylov_dim, cfg.dense_ceiling, /*sample_entropy=*/1, &raw));
    evolution_ptr ev(raw, kts_evolution_free);

    const size_t len = kts_evolution_length(ev.get());
    std::vector<double> t(len), f(len), tr(len), s(len);
    check(kts_evolution_times(ev.get(), t.data()));
    check(kts_evolution_fidelity(ev.get(), f.data()));
    check(kts_evolution_transfer(ev.get(), tr.data()));
    check(kts_evolution_entropy(ev.get(), s.data()));
    const std::string method = kts_evolution_method(ev.get());

    write_series_csv(cfg.out() / "fidelity.csv", t, f);
    write_series_csv(cfg.out() / "transfer.csv", t, tr);
    write_series_csv(cfg.out() / "entropy.csv", t, s);

    json meta = sidecar(cfg, basis.get(), initial, method);
    meta["t_max"] = cfg.t_max;
    meta["dt"] = cfg.dt;
    meta["dim"] = kts_basis_dim(basis.get());
    write_json(cfg.out() / "fidelity.meta.json", meta);
    json tmeta = meta;
    tmeta["target"] = target;
    write_json(cfg.out() / "transfer.meta.json", tmeta);
    json smeta = meta;
    smeta["cut"] = cfg.n / 2;
    write_json(cfg.out() / "entropy.meta.json", smeta);

    std::printf(
        "initial %s\ntarget %s\nmethod %s\ndim %u\nwrote fidelity.csv transfer.csv entropy.csv\n",
        initial.c_str(), target.c_str(), method.c_str(), kts_basis_dim(basis.get()));
    return 0;
}

int cmd_scar_report(const RunConfig& cfg) {
    const std::string root = resolve_root(cfg);
    basis_ptr basis = build_basis(root);
    ham_ptr h = build_ham(basis.get());
    const uint32_t dim = kts_basis_dim(basis.get());

    kts_spectrum* sraw = nullptr;
    check(kts_full_diagonalize(h.get(), cfg.dense_ceiling, &sraw));
    spectrum_ptr spec(sraw, kts_spectrum_free);

    std::vector<double> energies(dim);
    check(kts_spectrum_energies(spec.get(), energies.data()));

    // eigenstate entanglement scatter (even chain lengths only)
    if (cfg.n % 2 == 0) {
        std::vector<double> entropies(dim);
        check(kts_spectrum_entropies(spec.get(), basis.get(), entropies.data()));
        std::string body = "E,S\n";
        for (uint32_t k = 0; k < dim; ++k)
            body += fmt(energies[k]) + "," + fmt(entropies[k]) + "\n";
        write_text(cfg.out() / "ee_scatter.csv", body);
    } else {
        std::printf("note: skipping ee_scatter.csv (equipartition needs an even chain)\n");
    }

    std::vector<double> overlaps(dim);
    check(kts_spectrum_overlaps(spec.get(), basis.get(), root.c_str(), overlaps.data()));
    {
        std::string body = "E,log10_overlap\n";
        for (uint32_t k = 0; k < dim; ++k)
            body += fmt(energies[k]) + "," + log10_field(overlaps[k]) + "\n";
        write_text(cfg.out() / "overlap.csv", body);
    }

    // exact tower plus the forward-scattering overlay
    kts_fsa* fraw = nullptr;
    check(kts_fsa_build(basis.get(), &fraw));
    fsa_ptr fsa(fraw, kts_fsa_free);
    const size_t fsa_n = kts_fsa_size(fsa.get());
    std::vector<double> fsa_e(fsa_n), fsa_o(fsa_n);
    check(kts_fsa_overlay(fsa.get(), basis.get(), root.c_str(), fsa_e.data(), fsa_o.data()));
    {
        std::string body = "E,log10_overlap,source\n";
        for (uint32_t k = 0; k < dim; ++k)
            body += fmt(energies[k]) + "," + log10_field(overlaps[k]) + ",exact\n";
        for (size_t k = 0; k < fsa_n; ++k)
            body += fmt(fsa_e[k]) + "," + log10_field(fsa_o[k]) + ",fsa\n";
        write_text(cfg.out() / "fsa_overlay.csv", body);
    }

    double r_resolved = 0.0, r_plain = 0.0;
    size_t n_blocks = 0;
    check(kts_level_statistics(basis.get(), h.get(), 1, cfg.dense_ceiling, &r_resolved,
                               &n_blocks));
    check(kts_level_statistics(basis.get(), h.get(), 0, cfg.dense_ceiling, &r_plain, nullptr));

    json levels = sidecar(cfg, basis.get(), root, "dense");
    levels["dim"] = dim;
    levels["mean_r"] = r_resolved;
    levels["mean_r_unresolved"] = r_plain;
    levels["momentum_blocks"] = n_blocks;
    write_json(cfg.out() / "levels.json", levels);

    std::printf("dim %u\nmean r (momentum resolved) %s\nmean r (unresolved) %s\n"
                "fsa ladder %zu vectors, closed %d\n"
                "wrote overlap.csv fsa_overlay.csv levels.json\n",
                dim, fmt(r_resolved).c_str(), fmt(r_plain).c_str(), fsa_n,
                kts_fsa_closed(fsa.get()));
    return 0;
}

int cmd_pxp_verify(const RunConfig& cfg) {
    if (!cfg.pattern.empty()) {
        const std::string want = tile_to(cfg.pattern, cfg.n, "--pattern");
        if (want.find('-') != std::string::npos)
            throw cli_error{2, "the dual-model check runs on the all-plus sector; got " + want};
    }
    kts_pxp_report report{};
    check(kts_pxp_verify(cfg.n, &report));

    json out = {{"n", report.n_sites},
                {"dim_kitaev", report.dim_kitaev},
                {"dim_pxp", report.dim_pxp},
                {"mode", report.full_check ? "full" : "dimension-only"}};
    bool ok = report.dim_kitaev == report.dim_pxp;
    if (report.full_check) {
        out["intertwining_violations"] = report.intertwining_violations;
        out["max_spectral_deviation"] = report.max_spectral_deviation;
        ok = ok && report.intertwining_violations == 0 && report.max_spectral_deviation < 1e-10;
    }
    std::printf("%s\n", out.dump(2).c_str());
    write_json(cfg.out() / "pxp_verify.json", out);
    return ok ? 0 : 4;
}

int cmd_fsa(const RunConfig& cfg) {
    const std::string root = resolve_root(cfg);
    basis_ptr basis = build_basis(root);

    kts_fsa* raw = nullptr;
    check(kts_fsa_build(basis.get(), &raw));
    fsa_ptr fsa(raw, kts_fsa_free);

    const size_t size = kts_fsa_size(fsa.get());
    std::vector<double> betas(size > 0 ? size - 1 : 0);
    check(kts_fsa_betas(fsa.get(), betas.data()));

    std::string body = "n,beta\n";
    for (size_t k = 0; k < betas.size(); ++k)
        body += std::to_string(k + 1) + "," + fmt(betas[k]) + "\n";
    write_text(cfg.out() / "fsa_betas.csv", body);

    json out = sidecar(cfg, basis.get(), root, "fsa");
    out["dim"] = kts_basis_dim(basis.get());
    out["ladder_size"] = size;
    out["closed"] = kts_fsa_closed(fsa.get()) != 0;
    out["depth_violations"] = kts_fsa_depth_violations(fsa.get());
    std::vector<char> buf(cfg.n + 1);
    if (kts_fsa_endpoint(fsa.get(), buf.data(), buf.size()) == KTS_OK)
        out["endpoint"] = std::string(buf.data());
    else
        out["endpoint"] = nullptr;
    write_json(cfg.out() / "fsa.json", out);
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

int cmd_form_check(const RunConfig& cfg) {
    double dev = 0.0;
    check(kts_form_check(cfg.n, &dev));
    const bool ok = dev < 1e-10;
    json out = {{"n", cfg.n}, {"max_spectral_deviation", dev}, {"pass", ok}};
    std::printf("%s\n", out.dump(2).c_str());
    write_json(cfg.out() / "form_check.json", out);
    return ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("KITAEV_SCARS_THREADS"))
        kts_set_max_threads(std::atoi(threads));

    CLI::App app{"Sector-resolved exact diagonalization of the spin-1 Kitaev chain"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool dump_matrix = false;
    std::string target_flag;

    auto* sectors = app.add_subcommand("sectors", "enumerate sector dimensions");
    sectors->add_option("--n", cfg.n, "chain length")->required();
    sectors->add_option("--out", cfg.out_dir, "output directory");

    auto* basis = app.add_subcommand("basis", "build one sector basis");
    add_sector_flags(basis, cfg);
    basis->add_flag("--dump-matrix", dump_matrix, "write the sparse matrix in coordinate form");

    auto* evolve = app.add_subcommand("evolve", "fidelity / transfer / entropy dynamics");
    add_sector_flags(evolve, cfg);
    evolve->add_option("--tmax", cfg.t_max, "evolution time");
    evolve->add_option("--dt", cfg.dt, "grid step");
    evolve->add_option("--krylov-dim", cfg.krylov_dim, "Krylov subspace size");
    evolve->add_option("--seed", cfg.seed, "seed for --random-initial");
    evolve->add_option("--dense-ceiling", cfg.dense_ceiling,
                       "largest dimension evolved through the full spectrum");
    evolve->add_flag("--random-initial", cfg.random_initial,
                     "draw the initial state from the sector basis");
    evolve->add_option("--target", target_flag, "transfer target configuration");

    auto* scar = app.add_subcommand("scar-report", "spectrum, entanglement and overlap reports");
    add_sector_flags(scar, cfg);
    scar->add_option("--dense-ceiling", cfg.dense_ceiling, "full diagonalization guard");

    auto* pxp = app.add_subcommand("pxp-verify", "check the dual-model equivalence");
    pxp->add_option("--n", cfg.n, "chain length")->required();
    pxp->add_option("--pattern", cfg.pattern, "must tile to the all-plus sector");
    pxp->add_option("--out", cfg.out_dir, "output directory");

    auto* fsa = app.add_subcommand("fsa", "forward-scattering ladder report");
    add_sector_flags(fsa, cfg);

    auto* form = app.add_subcommand("form-check", "alternating vs uniform form spectra");
    form->add_option("--n", cfg.n, "chain length (even, <= 8)")->required();
    form->add_option("--out", cfg.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sectors)) return cmd_sectors(cfg);
        if (app.got_subcommand(basis)) return cmd_basis(cfg, dump_matrix);
        if (app.got_subcommand(evolve)) return cmd_evolve(cfg, target_flag);
        if (app.got_subcommand(scar)) return cmd_scar_report(cfg);
        if (app.got_subcommand(pxp)) return cmd_pxp_verify(cfg);
        if (app.got_subcommand(fsa)) return cmd_fsa(cfg);
        if (app.got_subcommand(form)) return cmd_form_check(cfg);
    } catch (const cli_error& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
