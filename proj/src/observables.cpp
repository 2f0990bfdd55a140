#include "kitaev/observables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <thread>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace kitaev {

namespace {

std::atomic<int> g_max_threads{1};

int effective_threads(size_t work_items) {
    int cap = g_max_threads.load();
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    return static_cast<int>(std::min<size_t>(cap, std::max<size_t>(work_items, 1)));
}

template <typename Fn>
void parallel_over(size_t count, Fn&& fn) {
    const int nt = effective_threads(count);
    if (nt <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<size_t> next{0};
    for (int t = 0; t < nt; ++t)
        workers.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& w : workers) w.join();
}

} // namespace

void set_max_threads(int n) { g_max_threads.store(n); }
int max_threads() { return g_max_threads.load(); }

namespace {

// Substring ids of each basis state on the two blocks of the bipartition.
struct Bipartition {
    std::vector<uint32_t> left_of;
    std::vector<uint32_t> right_of;
    size_t n_left, n_right;
};

Bipartition make_bipartition(const SectorBasis& basis, uint32_t cut) {
    const uint32_t n = basis.root().n_sites();
    if (cut == 0 || cut >= n) throw input_error("the cut must leave both blocks nonempty");

    const uint64_t left_mask = (uint64_t{1} << (2 * cut)) - 1;
    Bipartition bp;
    bp.left_of.resize(basis.dim());
    bp.right_of.resize(basis.dim());
    std::unordered_map<uint64_t, uint32_t> left_ids, right_ids;
    for (uint32_t i = 0; i < basis.dim(); ++i) {
        const uint64_t bits = basis.states[i].packed();
        const uint64_t l = bits & left_mask;
        const uint64_t r = bits >> (2 * cut);
        bp.left_of[i] = left_ids.emplace(l, static_cast<uint32_t>(left_ids.size())).first->second;
        bp.right_of[i] = right_ids.emplace(r, static_cast<uint32_t>(right_ids.size())).first->second;
    }
    bp.n_left = left_ids.size();
    bp.n_right = right_ids.size();
    return bp;
}

template <typename Scalar>
double entropy_impl(const SectorBasis& basis, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& state,
                    const Bipartition& bp) {
    if (state.size() != static_cast<Eigen::Index>(basis.dim()))
        throw input_error("state length does not match the basis dimension");
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > 1e-6)
        throw input_error("state must be normalized (|norm - 1| <= 1e-6)");

    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix m = Matrix::Zero(bp.n_left, bp.n_right);
    for (uint32_t i = 0; i < basis.dim(); ++i) m(bp.left_of[i], bp.right_of[i]) = state[i];

    // Eigenvalues of the Gram matrix over the smaller block are the squared
    // Schmidt values.
    Matrix gram = bp.n_left <= bp.n_right ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);

    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double p = es.eigenvalues()[k];
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

} // namespace

double entanglement_entropy(const SectorBasis& basis, const Eigen::VectorXcd& state, uint32_t cut) {
    return entropy_impl(basis, state, make_bipartition(basis, cut));
}

double entanglement_entropy(const SectorBasis& basis, const Eigen::VectorXd& state, uint32_t cut) {
    return entropy_impl(basis, state, make_bipartition(basis, cut));
}

std::vector<EntropyPoint> ee_scatter(const Spectrum& spectrum, const SectorBasis& basis) {
    const uint32_t n = basis.root().n_sites();
    if (n % 2 != 0) throw input_error("equipartition entropy requires an even chain length");
    if (spectrum.vectors.rows() != static_cast<Eigen::Index>(basis.dim()))
        throw input_error("spectrum and basis dimensions disagree");

    const Bipartition bp = make_bipartition(basis, n / 2);
    std::vector<EntropyPoint> points(spectrum.energies.size());
    parallel_over(points.size(), [&](size_t k) {
        const Eigen::VectorXd v = spectrum.vectors.col(static_cast<Eigen::Index>(k));
        points[k] = {spectrum.energies[static_cast<Eigen::Index>(k)], entropy_impl(basis, v, bp)};
    });
    return points;
}

std::vector<double> OverlapTower::log10_overlaps() const {
    std::vector<double> out(overlaps.size());
    for (size_t k = 0; k < overlaps.size(); ++k)
        out[k] = overlaps[k] == 0.0 ? -std::numeric_limits<double>::infinity()
                                    : std::log10(std::max(overlaps[k], 1e-16));
    return out;
}

OverlapTower overlap_tower(const Spectrum& spectrum, const SectorBasis& basis,
                           const SpinConfig& initial) {
    const auto idx = basis.index_of(initial);
    if (!idx) throw input_error("initial state " + initial.to_string() + " is not in the basis");
    OverlapTower tower;
    tower.energies.assign(spectrum.energies.data(),
                          spectrum.energies.data() + spectrum.energies.size());
    tower.overlaps.resize(tower.energies.size());
    for (size_t k = 0; k < tower.overlaps.size(); ++k) {
        const double a = spectrum.vectors(static_cast<Eigen::Index>(*idx),
                                          static_cast<Eigen::Index>(k));
        tower.overlaps[k] = a * a;
    }
    return tower;
}

std::vector<TowerTop> tower_tops(const OverlapTower& tower, double bin_width) {
    if (bin_width <= 0.0) throw input_error("bin width must be positive");
    std::unordered_map<int64_t, TowerTop> best;
    for (size_t k = 0; k < tower.energies.size(); ++k) {
        const auto bin = static_cast<int64_t>(std::llround(tower.energies[k] / bin_width));
        auto it = best.find(bin);
        if (it == best.end() || tower.overlaps[k] > it->second.overlap)
            best[bin] = {tower.energies[k], tower.overlaps[k]};
    }
    std::vector<TowerTop> tops;
    tops.reserve(best.size());
    for (const auto& [bin, top] : best)
        if (top.overlap > 1e-12) tops.push_back(top);
    std::sort(tops.begin(), tops.end(),
              [](const TowerTop& a, const TowerTop& b) { return a.energy < b.energy; });
    return tops;
}

double mean_r_ratio(std::span<const double> energies) {
    if (energies.size() < 3) throw input_error("gap-ratio statistic needs at least three levels");
    double sum = 0.0;
    size_t count = 0;
    for (size_t k = 0; k + 2 < energies.size(); ++k) {
        const double d1 = energies[k + 1] - energies[k];
        const double d2 = energies[k + 2] - energies[k + 1];
        const double hi = std::max(d1, d2);
        if (hi <= 0.0) continue;  // exactly degenerate pair, no defined ratio
        sum += std::min(d1, d2) / hi;
        ++count;
    }
    if (count == 0) throw input_error("spectrum has no nondegenerate consecutive gaps");
    return sum / static_cast<double>(count);
}

namespace {

struct Orbits {
    std::vector<uint32_t> rep_index;   // per basis state: basis index of its representative
    std::vector<uint32_t> shift;       // T_p applications taking the representative to the state
    std::vector<uint32_t> reps;        // ascending basis indices
    std::vector<uint32_t> orbit_size;  // parallel to reps
};

// Orbit decomposition under translation by `period` sites. Iterating basis
// states in order makes the first-seen member the orbit minimum, so
// representatives come out ascending.
Orbits find_orbits(const SectorBasis& basis, uint32_t period, uint32_t group_order) {
    Orbits orbits;
    const uint32_t dim = basis.dim();
    constexpr uint32_t undiscovered = std::numeric_limits<uint32_t>::max();
    orbits.rep_index.assign(dim, undiscovered);
    orbits.shift.assign(dim, 0);

    for (uint32_t i = 0; i < dim; ++i) {
        if (orbits.rep_index[i] != undiscovered) continue;
        SpinConfig c = basis.states[i];
        uint32_t size = 0;
        for (uint32_t m = 0; m < group_order; ++m) {
            const auto j = basis.index_of(c);
            if (!j)
                throw closure_error("translation by the sector period left the basis: " +
                                    c.to_string());
            if (m > 0 && *j == i) break;
            orbits.rep_index[*j] = i;
            orbits.shift[*j] = m;
            ++size;
            c = c.translated(static_cast<int64_t>(period));
        }
        orbits.reps.push_back(i);
        orbits.orbit_size.push_back(size);
    }
    return orbits;
}

} // namespace

// Walks the momentum blocks; with_vectors controls whether eigenvectors are
// computed and handed to the sink together with the symmetrized-basis layout.
template <typename Sink>
void over_momentum_blocks(const SectorBasis& basis, bool with_vectors, Sink&& sink) {
    const uint32_t n = basis.root().n_sites();
    const uint32_t period = basis.label.minimal_period();
    const uint32_t group_order = n / period;
    const Orbits orbits = find_orbits(basis, period, group_order);

    std::unordered_map<uint32_t, uint32_t> rep_slot;  // basis index -> position among reps
    for (uint32_t k = 0; k < orbits.reps.size(); ++k) rep_slot[orbits.reps[k]] = k;

    for (uint32_t mom = 0; mom < group_order; ++mom) {
        std::vector<uint32_t> slots;  // representatives compatible with this momentum
        for (uint32_t k = 0; k < orbits.reps.size(); ++k)
            if ((static_cast<uint64_t>(mom) * orbits.orbit_size[k]) % group_order == 0)
                slots.push_back(k);
        std::unordered_map<uint32_t, uint32_t> col_of;  // rep slot -> block column
        for (uint32_t c = 0; c < slots.size(); ++c) col_of[slots[c]] = c;

        const double theta = 2.0 * std::numbers::pi * mom / group_order;
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(slots.size(), slots.size());
        for (uint32_t c = 0; c < slots.size(); ++c) {
            const uint32_t slot = slots[c];
            const double oi = orbits.orbit_size[slot];
            for (const BondImage& im : apply_hamiltonian(basis.states[orbits.reps[slot]])) {
                const auto s = basis.index_of(im.target);
                if (!s) throw closure_error("basis is not closed under the Hamiltonian");
                const uint32_t target_slot = rep_slot.at(orbits.rep_index[*s]);
                const auto col_it = col_of.find(target_slot);
                if (col_it == col_of.end()) continue;  // image orbit incompatible here
                const double oj = orbits.orbit_size[target_slot];
                const double phase = theta * orbits.shift[*s];
                block(col_it->second, c) += static_cast<double>(im.amplitude) *
                                            std::sqrt(oi / oj) *
                                            std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
        if (block.size() > 0) {
            const double herm_dev = (block - block.adjoint()).cwiseAbs().maxCoeff();
            if (herm_dev > 1e-10)
                throw std::runtime_error("momentum block is not Hermitian (deviation " +
                                         std::to_string(herm_dev) + ")");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            block, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);

        // embeds block column coefficients into sector coordinates;
        // |r; k> = (1/sqrt o) sum_j w^{-kj} T^j |r>
        auto embed = [&, theta](const Eigen::VectorXcd& coeffs) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dim());
            for (uint32_t i = 0; i < basis.dim(); ++i) {
                const uint32_t slot = rep_slot.at(orbits.rep_index[i]);
                const auto col_it = col_of.find(slot);
                if (col_it == col_of.end()) continue;
                const double phase = -theta * orbits.shift[i];
                v[i] = coeffs[col_it->second] *
                       std::complex<double>(std::cos(phase), std::sin(phase)) /
                       std::sqrt(static_cast<double>(orbits.orbit_size[slot]));
            }
            return v;
        };
        sink(mom, es, embed);
    }
}

std::vector<Eigen::VectorXd> momentum_block_spectra(const SectorBasis& basis) {
    std::vector<Eigen::VectorXd> spectra;
    over_momentum_blocks(basis, false, [&](uint32_t, const auto& es, const auto&) {
        spectra.push_back(es.eigenvalues());
    });
    return spectra;
}

std::vector<EntropyPoint> momentum_resolved_ee_scatter(const SectorBasis& basis) {
    const uint32_t n = basis.root().n_sites();
    if (n % 2 != 0) throw input_error("equipartition entropy requires an even chain length");
    const Bipartition bp = make_bipartition(basis, n / 2);

    std::vector<EntropyPoint> points;
    std::vector<Eigen::VectorXcd> states;
    over_momentum_blocks(basis, true, [&](uint32_t, const auto& es, const auto& embed) {
        for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
            Eigen::VectorXcd v = embed(es.eigenvectors().col(a));
            v /= v.norm();
            points.push_back({es.eigenvalues()[a], 0.0});
            states.push_back(std::move(v));
        }
    });
    parallel_over(points.size(),
                  [&](size_t k) { points[k].entropy = entropy_impl(basis, states[k], bp); });
    std::sort(points.begin(), points.end(),
              [](const EntropyPoint& a, const EntropyPoint& b) { return a.key < b.key; });
    return points;
}

LevelStats level_statistics(const SectorBasis& basis, const SparseHamiltonian& h,
                            bool momentum_resolve, uint32_t dense_ceiling) {
    LevelStats stats{0.0, 0, {}};
    double sum = 0.0;
    size_t count = 0;

    auto add_block = [&](std::span<const double> energies) {
        stats.block_dims.push_back(energies.size());
        if (energies.size() < 3) return;
        for (size_t k = 0; k + 2 < energies.size(); ++k) {
            const double d1 = energies[k + 1] - energies[k];
            const double d2 = energies[k + 2] - energies[k + 1];
            const double hi = std::max(d1, d2);
            if (hi <= 0.0) continue;
            sum += std::min(d1, d2) / hi;
            ++count;
        }
    };

    if (momentum_resolve) {
        for (const Eigen::VectorXd& block : momentum_block_spectra(basis))
            add_block(std::span<const double>(block.data(), static_cast<size_t>(block.size())));
    } else {
        const Spectrum spec = full_diagonalize(h, dense_ceiling);
        add_block(std::span<const double>(spec.energies.data(),
                                          static_cast<size_t>(spec.energies.size())));
    }

    size_t total = 0;
    for (size_t d : stats.block_dims) total += d;
    if (total < 100)
        throw input_error("level statistics needs at least 100 levels after resolution");
    if (count == 0) throw input_error("no nondegenerate consecutive gaps");
    stats.mean_r = sum / static_cast<double>(count);
    stats.n_gaps = count;
    return stats;
}

} // namespace kitaev
