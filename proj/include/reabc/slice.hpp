#ifndef REABC_SLICE_HPP
#define REABC_SLICE_HPP

#include "reabc/model.hpp"
#include "reabc/rng.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace reabc {

struct SliceConfig {
    double width = 1.0;        // initial search width w, in (0,1]
    int max_iterations = 1000; // hitting this means the target map is broken
};

struct SliceOutcome {
    LatentVector new_point;
    double phi_value = 0.0;   // phi at the accepted point
    double final_abs_z = 0.0; // |z| of the accepted proposal
    int iterations_used = 0;  // = number of phi evaluations
};

// Fold y onto [0,1] by reflecting at the endpoints: with m = y mod 2
// (nonnegative remainder), r(y) = m for m < 1 and 2 - m otherwise.
// Continuous and 2-periodic.
inline double reflect(double y) {
    double m = std::fmod(y, 2.0);
    if (m < 0.0) m += 2.0;
    return (m < 1.0) ? m : 2.0 - m;
}

// Shrinkage slice-sampling update with invariant distribution uniform on
// {x in [0,1]^m : phi(x) <= epsilon}. A random direction is drawn from m
// standard normals, a bracket [-u, w-u] around 0 is shrunk toward 0 until a
// proposal lands inside the target set. The bracket always contains z = 0
// (the current point), so the loop terminates with probability 1.
template <typename PhiFn>
SliceOutcome slice_update(const LatentVector& x, PhiFn&& phi, double epsilon,
                          const SliceConfig& cfg, Rng& rng,
                          std::optional<double> phi_at_x = std::nullopt) {
    if (!(cfg.width > 0.0) || cfg.width > 1.0) {
        throw std::invalid_argument("slice_update: width must lie in (0,1]");
    }
    const double phi_x = phi_at_x ? *phi_at_x : phi(x);
    if (!(phi_x <= epsilon)) {
        throw std::logic_error("slice_update: starting point violates phi(x) <= epsilon");
    }

    const int m = static_cast<int>(x.size());
    std::vector<double> direction(m);
    for (int i = 0; i < m; ++i) direction[i] = rng.normal();

    double u = rng.uniform(0.0, cfg.width);
    double a = -u;
    double b = cfg.width - u;

    LatentVector proposal(m);
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        double z = rng.uniform(a, b);
        for (int i = 0; i < m; ++i) proposal[i] = reflect(x[i] + z * direction[i]);
        double phi_p = phi(proposal);
        if (phi_p <= epsilon) {
            return SliceOutcome{std::move(proposal), phi_p, std::fabs(z), iter};
        }
        if (z < 0.0) a = z; else b = z;
    }
    throw std::runtime_error(
        "slice_update: no acceptance within max_iterations; "
        "phi is likely nondeterministic or the target set is broken");
}

// Search-width rule: w = min(1, 2 zbar) with zbar the largest accepted |z|
// of the previous SMC iteration. Floored so a freak zbar ~ 0 cannot freeze
// the kernel.
inline double adapt_width(double max_abs_z_prev_iteration) {
    constexpr double kMinWidth = 1e-6;
    if (max_abs_z_prev_iteration < 0.0) {
        throw std::invalid_argument("adapt_width: negative input");
    }
    double w = std::min(1.0, 2.0 * max_abs_z_prev_iteration);
    return std::max(w, kMinWidth);
}

} // namespace reabc

#endif
