#include "ofbf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ofbf::quad {

namespace {

Rule make_gauss_legendre(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

Rule make_gauss_laguerre(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    double x = 0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            x = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            x += 15.0 / (1.0 + 2.5 * n);
        } else {
            x += (1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1)) * (x - r.nodes[i - 2]);
        }
        double pp = 0, pnm1 = 0;
        for (int it = 0; it < 200; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1 - x) * p1 - j * p2) / (j + 1);
            }
            pp = n * (p0 - p1) / x;  // L_n'(x)
            pnm1 = p1;               // L_{n-1}(x)
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-14 * std::max(1.0, std::abs(x))) break;
        }
        r.nodes[i] = x;
        r.weights[i] = -1.0 / (pp * n * pnm1);
    }
    return r;
}

Rule make_tanh_sinh(int points) {
    // x = tanh(pi/2 sinh t), truncated where the weights underflow
    const double t_max = 3.7;
    const double h = 2.0 * t_max / std::max(8, points);
    Rule r;
    for (double t = -t_max; t <= t_max + 1e-12; t += h) {
        const double s = std::sinh(t);
        const double x = std::tanh(0.5 * M_PI * s);
        const double ch = std::cosh(0.5 * M_PI * s);
        const double w = h * 0.5 * M_PI * std::cosh(t) / (ch * ch);
        if (w < 1e-300 || std::abs(x) >= 1.0) continue;
        r.nodes.push_back(x);
        r.weights.push_back(w);
    }
    return r;
}

std::mutex cache_mutex;

}  // namespace

const Rule& gauss_legendre(int n) {
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

const Rule& gauss_laguerre(int n) {
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_laguerre(n)).first;
    return it->second;
}

const Rule& tanh_sinh(int points) {
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, make_tanh_sinh(points)).first;
    return it->second;
}

}  // namespace ofbf::quad
