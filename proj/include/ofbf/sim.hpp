#pragma once

// Gaussian field simulation by covariance factorization on finite grids,
// plus empirical verification against the quadrature covariance.

#include <cstdint>
#include <vector>

#include "ofbf/spectral.hpp"

namespace ofbf::sim {

using spectral::OfbfSpec;
using spectral::QuadratureConfig;

struct GridDesign {
    std::vector<Vec2> points;  // distinct locations; Vec2::x only for m = 1
};

struct SamplerState {
    int n = 1;                    // field components per point
    std::vector<Vec2> points;
    std::vector<double> factor;   // lower-triangular Cholesky factor, row-major N x N
    double jitter = 0;            // diagonal regularization actually applied
    std::uint64_t seed = 0;
    int dim() const { return n * static_cast<int>(points.size()); }
};

// Assembles the block covariance [Gamma(p_i, p_j)] (OpenMP-parallel blocks),
// symmetrizes, and factorizes with the escalating jitter ladder
// {0, 1e-12, 1e-10, 1e-8} * (trace/N).
SamplerState build_sampler(const OfbfSpec& spec, const GridDesign& grid, std::uint64_t seed,
                           const QuadratureConfig& cfg = {});

// count realizations of X = L Z with Z iid standard normal; realization r is
// generated from an independent substream of (seed, r), so results are
// deterministic for any worker count.
std::vector<std::vector<double>> sample(const SamplerState& state, int count);

// Min/max eigenvalue of the assembled block covariance (diagnostics).
struct EigBounds {
    double min_eig = 0, max_eig = 0;
};
EigBounds covariance_eig_bounds(const OfbfSpec& spec, const std::vector<Vec2>& points,
                                const QuadratureConfig& cfg = {});

struct SymmetryTestResult {
    bool pass = false;
    double statistic = 0;  // max |delta| / SE over entries
    double threshold = 4.0;
};

enum class SymmetryMode { Domain, Range };

// Compares the empirical covariance of the transformed field against the raw
// one; domain mode requires the grid to be closed under the element.
SymmetryTestResult empirical_symmetry_test(const OfbfSpec& spec, const RealMatrix& element,
                                           SymmetryMode mode, const GridDesign& grid,
                                           int samples, std::uint64_t seed,
                                           const QuadratureConfig& cfg = {});

// splitmix64 stream; the basis of all simulation randomness.
std::uint64_t splitmix64(std::uint64_t& state);
// standard normal from a (seed, stream) counter via Box-Muller
class NormalStream {
  public:
    NormalStream(std::uint64_t seed, std::uint64_t stream);
    double next();

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0;
};

}  // namespace ofbf::sim
