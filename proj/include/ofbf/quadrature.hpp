#pragma once

#include <vector>

namespace ofbf::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]. Cached per order; thread-safe.
const Rule& gauss_legendre(int n);

// Gauss-Laguerre rule for int_0^inf e^{-y} f(y) dy. Cached; thread-safe.
const Rule& gauss_laguerre(int n);

// tanh-sinh rule on (-1, 1) with roughly `points` nodes; robust against
// endpoint singularities. Cached; thread-safe.
const Rule& tanh_sinh(int points);

// Map a [-1,1] node to [a,b].
inline double map_node(double t, double a, double b) {
    return 0.5 * (a + b) + 0.5 * (b - a) * t;
}

}  // namespace ofbf::quad
