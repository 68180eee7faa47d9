#pragma once

#include <cstddef>
#include <vector>

namespace lfmax::detail {

// Nodes and weights on [-1, 1], cached per order (GSL glfixed tables).
struct GaussLegendreRule {
    std::vector<double> x, w;
};

const GaussLegendreRule& gauss_legendre(std::size_t n);

template <class F>
auto gl_integrate(const GaussLegendreRule& r, F&& f, double a, double b) {
    using R = decltype(f(a));
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    R acc{};
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
    return acc * h;
}

}  // namespace lfmax::detail
