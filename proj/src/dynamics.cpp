#include "kitaev/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "kitaev/observables.hpp"

namespace kitaev {

Spectrum full_diagonalize(const SparseHamiltonian& h, uint32_t dense_ceiling) {
    if (h.dim() > dense_ceiling)
        throw resource_limit_error("dimension " + std::to_string(h.dim()) +
                                   " exceeds the dense ceiling " + std::to_string(dense_ceiling) +
                                   "; use the Krylov path for dynamics at this size");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense eigensolver failed to converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// One Lanczos approximation of exp(-i dt H) v. Returns false when the error
// estimate does not pass within m vectors; the caller then splits the step.
bool lanczos_expm_step(const SparseHamiltonian& h, const Eigen::VectorXcd& v, double dt,
                       const KrylovOptions& opts, Eigen::VectorXcd& out) {
    const auto dim = v.size();
    const double vnorm = v.norm();
    if (vnorm == 0.0) { out = v; return true; }

    const int m = std::max(2, std::min<int>(opts.m, static_cast<int>(dim)));
    const std::complex<double> itau(0.0, -dt);

    Eigen::MatrixXcd q(dim, m);
    Eigen::VectorXd alpha(m), beta(m);  // beta[k] couples q_k and q_{k+1}
    q.col(0) = v / vnorm;

    auto small_exp_e1 = [&](int k, double& err_next, double beta_next) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        Eigen::VectorXcd phases(k);
        for (int i = 0; i < k; ++i) phases[i] = std::exp(itau * es.eigenvalues()[i]);
        Eigen::VectorXcd u =
            es.eigenvectors() * (phases.array() * es.eigenvectors().row(0).transpose().array().cast<std::complex<double>>()).matrix();
        err_next = beta_next * std::abs(u[k - 1]);
        return u;
    };

    int k = 0;
    bool breakdown = false;
    while (k < m) {
        Eigen::VectorXcd w = h.apply(Eigen::VectorXcd(q.col(k)));
        alpha[k] = w.dot(q.col(k)).real();
        w -= alpha[k] * q.col(k);
        if (k > 0) w -= beta[k - 1] * q.col(k - 1);
        // full reorthogonalization, one pass
        for (int j = 0; j <= k; ++j) w -= q.col(j).dot(w) * q.col(j);
        beta[k] = w.norm();
        ++k;
        if (beta[k - 1] < 1e-13 * std::max(1.0, std::abs(alpha[k - 1]))) {
            breakdown = true;  // invariant subspace: the small exponential is exact
            break;
        }
        if (k < m) q.col(k) = w / beta[k - 1];
    }

    double err = 0.0;
    Eigen::VectorXcd u = small_exp_e1(k, err, breakdown ? 0.0 : beta[k - 1]);
    if (!breakdown && err > opts.tol) return false;

    out.noalias() = q.leftCols(k) * (vnorm * u);
    return true;
}

} // namespace

Eigen::VectorXcd krylov_evolve(const SparseHamiltonian& h, const Eigen::VectorXcd& v0, double dt,
                               const KrylovOptions& opts) {
    if (v0.size() != static_cast<Eigen::Index>(h.dim())) throw input_error("state length mismatch");
    if (opts.m < 2) throw input_error("Krylov dimension must be at least 2");
    if (dt == 0.0) return v0;

    Eigen::VectorXcd v = v0, next(v0.size());
    double remaining = dt;
    double step = dt;
    while (remaining != 0.0) {
        if (std::abs(step) > std::abs(remaining)) step = remaining;
        if (lanczos_expm_step(h, v, step, opts, next)) {
            v.swap(next);
            remaining -= step;
        } else {
            step *= 0.5;
            if (std::abs(step) < 1e-12 * std::abs(dt))
                throw std::runtime_error("Krylov step splitting failed to reach the error target");
        }
    }
    return v;
}

std::vector<double> TimeGrid::times() const {
    if (dt <= 0.0) throw input_error("time step must be positive");
    if (t_max < 0.0) throw input_error("evolution time must be nonnegative");
    std::vector<double> ts;
    ts.reserve(static_cast<size_t>(t_max / dt) + 2);
    for (size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (t > t_max + 1e-12 * std::max(1.0, t_max)) break;
        ts.push_back(t);
    }
    return ts;
}

EvolutionResult run_evolution(const SectorBasis& basis, const SparseHamiltonian& h,
                              const SpinConfig& initial, const std::optional<SpinConfig>& target,
                              const EvolveOptions& opts) {
    const auto idx_init = basis.index_of(initial);
    if (!idx_init) throw input_error("initial state " + initial.to_string() + " is not in the sector basis");
    std::optional<uint32_t> idx_target;
    if (target) {
        idx_target = basis.index_of(*target);
        if (!idx_target)
            throw input_error("target state " + target->to_string() + " is not in the sector basis");
    }

    const uint32_t cut = opts.entropy_cut >= 0 ? static_cast<uint32_t>(opts.entropy_cut)
                                               : basis.root().n_sites() / 2;
    const std::vector<double> times = opts.grid.times();

    const bool dense = opts.method == EvolveMethod::dense ||
                       (opts.method == EvolveMethod::automatic && h.dim() <= opts.dense_ceiling);

    EvolutionResult res;
    res.method = dense ? "dense" : "krylov";
    res.fidelity.times = times;
    if (idx_target) {
        res.transfer.emplace();
        res.transfer->times = times;
    }
    if (opts.sample_entropy) {
        res.entropy.emplace();
        res.entropy->times = times;
    }

    auto sample = [&](const Eigen::VectorXcd& v) {
        res.fidelity.values.push_back(std::norm(v[*idx_init]));
        if (idx_target) res.transfer->values.push_back(std::norm(v[*idx_target]));
        if (opts.sample_entropy) res.entropy->values.push_back(entanglement_entropy(basis, v, cut));
    };

    if (dense) {
        const Spectrum spec = full_diagonalize(h, opts.method == EvolveMethod::dense
                                                      ? std::numeric_limits<uint32_t>::max()
                                                      : opts.dense_ceiling);
        const Eigen::VectorXd w = spec.vectors.row(*idx_init).transpose();
        Eigen::VectorXcd coeff(h.dim()), v(h.dim());
        for (const double t : times) {
            for (uint32_t k = 0; k < h.dim(); ++k)
                coeff[k] = w[k] * std::exp(std::complex<double>(0.0, -spec.energies[k] * t));
            v.noalias() = spec.vectors * coeff;
            sample(v);
        }
    } else {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(h.dim());
        v[*idx_init] = 1.0;
        double t_now = 0.0;
        for (const double t : times) {
            if (t > t_now) {
                v = krylov_evolve(h, v, t - t_now, opts.krylov);
                t_now = t;
            }
            sample(v);
        }
    }
    return res;
}

TimeSeries fidelity_series(const SectorBasis& basis, const SparseHamiltonian& h,
                           const SpinConfig& initial, const EvolveOptions& opts) {
    return run_evolution(basis, h, initial, std::nullopt, opts).fidelity;
}

TimeSeries transfer_series(const SectorBasis& basis, const SparseHamiltonian& h,
                           const SpinConfig& initial, const SpinConfig& target,
                           const EvolveOptions& opts) {
    return *run_evolution(basis, h, initial, target, opts).transfer;
}

SpinConfig random_basis_state(const SectorBasis& basis, uint64_t seed) {
    if (basis.dim() == 0) throw input_error("empty basis");
    std::mt19937_64 rng(seed);
    const uint64_t n = basis.dim();
    // rejection sampling keeps the draw uniform and platform-independent
    const uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t r;
    do { r = rng(); } while (r >= limit);
    return basis.states[static_cast<size_t>(r % n)];
}

std::vector<size_t> find_revival_peaks(const TimeSeries& series, double min_prominence,
                                       double t_min) {
    const auto& v = series.values;
    std::vector<size_t> peaks;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
        if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
        if (series.times[i] <= t_min) continue;
        // prominence: drop to the lowest point before re-reaching this height
        double lmin = v[i];
        for (size_t j = i; j-- > 0;) {
            lmin = std::min(lmin, v[j]);
            if (v[j] > v[i]) break;
        }
        double rmin = v[i];
        for (size_t j = i + 1; j < v.size(); ++j) {
            rmin = std::min(rmin, v[j]);
            if (v[j] > v[i]) break;
        }
        if (v[i] - std::max(lmin, rmin) > min_prominence) peaks.push_back(i);
    }
    return peaks;
}

} // namespace kitaev
