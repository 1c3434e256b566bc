#include "ofbf/sim.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ofbf::sim {

namespace {

Eigen::MatrixXd assemble_block_covariance(const OfbfSpec& spec, const std::vector<Vec2>& points,
                                          const QuadratureConfig& cfg) {
    const int np = static_cast<int>(points.size());
    const int n = spec.n();
    const auto blocks = spectral::covariance_grid(spec, points, cfg);
    Eigen::MatrixXd cov(np * n, np * n);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) {
            const RealMatrix& b = blocks[static_cast<size_t>(i) * np + j];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) cov(i * n + r, j * n + c) = b(r, c);
        }
    cov = 0.5 * (cov + cov.transpose()).eval();
    return cov;
}

}  // namespace

SamplerState build_sampler(const OfbfSpec& spec, const GridDesign& grid, std::uint64_t seed,
                           const QuadratureConfig& cfg) {
    if (grid.points.empty()) throw Error(ErrorKind::InvalidInput, "empty grid");
    for (size_t i = 0; i < grid.points.size(); ++i)
        for (size_t j = i + 1; j < grid.points.size(); ++j)
            if (std::hypot(grid.points[i].x - grid.points[j].x,
                           grid.points[i].y - grid.points[j].y) < 1e-12)
                throw Error(ErrorKind::InvalidInput, "grid points must be distinct");

    const Eigen::MatrixXd cov = assemble_block_covariance(spec, grid.points, cfg);
    const int dim = static_cast<int>(cov.rows());
    const double scale = cov.trace() / dim;

    SamplerState state;
    state.n = spec.n();
    state.points = grid.points;
    state.seed = seed;

    for (double jitter_factor : {0.0, 1e-12, 1e-10, 1e-8}) {
        const double jitter = jitter_factor * scale;
        Eigen::MatrixXd work = cov + jitter * Eigen::MatrixXd::Identity(dim, dim);
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            const Eigen::MatrixXd l = llt.matrixL();
            state.factor.assign(static_cast<size_t>(dim) * dim, 0.0);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j <= i; ++j) state.factor[static_cast<size_t>(i) * dim + j] = l(i, j);
            state.jitter = jitter;
            return state;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
    throw Error(ErrorKind::NotPSD,
                "covariance factorization failed at maximal jitter; min eigenvalue " +
                    std::to_string(es.eigenvalues().minCoeff()));
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream) {
    // decorrelate the substream from the seed with two mixing rounds
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    splitmix64(s);
    splitmix64(s);
    state_ = s;
}

double NormalStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] uniforms
    const double u1 =
        (static_cast<double>(splitmix64(state_) >> 11) + 1.0) * (1.0 / 9007199254740993.0);
    const double u2 =
        static_cast<double>(splitmix64(state_) >> 11) * (1.0 / 9007199254740992.0);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::vector<std::vector<double>> sample(const SamplerState& state, int count) {
    if (count < 0) throw Error(ErrorKind::InvalidInput, "negative sample count");
    const int dim = state.dim();
    std::vector<std::vector<double>> out(count);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < count; ++r) {
        NormalStream rng(state.seed, static_cast<std::uint64_t>(r));
        std::vector<double> z(dim);
        for (double& v : z) v = rng.next();
        std::vector<double> x(dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            double acc = 0;
            const double* row = &state.factor[static_cast<size_t>(i) * dim];
            for (int j = 0; j <= i; ++j) acc += row[j] * z[j];
            x[i] = acc;
        }
        out[r] = std::move(x);
    }
    return out;
}

EigBounds covariance_eig_bounds(const OfbfSpec& spec, const std::vector<Vec2>& points,
                                const QuadratureConfig& cfg) {
    const Eigen::MatrixXd cov = assemble_block_covariance(spec, points, cfg);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

SymmetryTestResult empirical_symmetry_test(const OfbfSpec& spec, const RealMatrix& element,
                                           SymmetryMode mode, const GridDesign& grid, int samples,
                                           std::uint64_t seed, const QuadratureConfig& cfg) {
    if (samples < 16) throw Error(ErrorKind::InvalidInput, "too few samples");
    const int np = static_cast<int>(grid.points.size());
    const int n = spec.n();
    const int dim = np * n;

    std::vector<int> perm(np, -1);
    if (mode == SymmetryMode::Domain) {
        for (int i = 0; i < np; ++i) {
            const Vec2 image = (spec.m() == 1)
                                   ? Vec2{element(0, 0) * grid.points[i].x, 0.0}
                                   : apply(element, grid.points[i]);
            for (int j = 0; j < np; ++j)
                if (std::hypot(image.x - grid.points[j].x, image.y - grid.points[j].y) < 1e-9)
                    perm[i] = j;
            if (perm[i] < 0)
                throw Error(ErrorKind::GridNotInvariant,
                            "grid is not closed under the domain element");
        }
    }

    const SamplerState state = build_sampler(spec, grid, seed, cfg);
    const auto draws = sample(state, samples);

    // per-sample transformed field, then the per-entry deviation of the
    // product moments together with its own standard error
    std::vector<double> y(dim);
    std::vector<double> dsum(static_cast<size_t>(dim) * dim, 0.0);
    std::vector<double> dsq(static_cast<size_t>(dim) * dim, 0.0);
    for (const auto& x : draws) {
        if (mode == SymmetryMode::Domain) {
            for (int pi = 0; pi < np; ++pi)
                for (int r = 0; r < n; ++r) y[pi * n + r] = x[perm[pi] * n + r];
        } else {
            for (int pi = 0; pi < np; ++pi)
                for (int r = 0; r < n; ++r) {
                    double acc = 0;
                    for (int a = 0; a < n; ++a) acc += element(r, a) * x[pi * n + a];
                    y[pi * n + r] = acc;
                }
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const double d = y[i] * y[j] - x[i] * x[j];
                dsum[static_cast<size_t>(i) * dim + j] += d;
                dsq[static_cast<size_t>(i) * dim + j] += d * d;
            }
    }

    SymmetryTestResult result;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double mean = dsum[static_cast<size_t>(i) * dim + j] / samples;
            const double var =
                std::max(0.0, dsq[static_cast<size_t>(i) * dim + j] / samples - mean * mean);
            const double se = std::sqrt(var / samples);
            if (std::abs(mean) < 1e-300) continue;  // identical entries (identity element)
            result.statistic = std::max(result.statistic, std::abs(mean) / std::max(se, 1e-300));
        }
    result.pass = result.statistic <= result.threshold;
    return result;
}

}  // namespace ofbf::sim
