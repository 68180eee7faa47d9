#include "lfmax/detail/gauss_legendre.hpp"

#include "lfmax/errors.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>

namespace lfmax::detail {

const GaussLegendreRule& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[n];
    if (!slot) {
        gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
        if (!t) throw ResourceError("cannot allocate Gauss-Legendre table");
        auto rule = std::make_unique<GaussLegendreRule>();
        rule->x.resize(n);
        rule->w.resize(n);
        for (std::size_t i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &rule->x[i], &rule->w[i], t);
        gsl_integration_glfixed_table_free(t);
        slot = std::move(rule);
    }
    return *slot;
}

}  // namespace lfmax::detail
