#include "outerspace/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace outerspace {

std::uint64_t poisson_sample(Rng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_sample: mean must be finite and >= 0");
    }
    // Count uniform draws until their running product falls below exp(-mean).
    // The comparison is kept in product form: p starts at 1 and exp(+chunk)
    // factors are multiplied in as needed, keeping p inside double range even
    // for large means (chunk = 500 -> factor ~ 1.4e217).
    constexpr double kChunk = 500.0;
    double remaining = mean;
    double p = 1.0;
    std::uint64_t k = 0;
    do {
        ++k;
        p *= rng.next_unit();
        while (p < 1.0 && remaining > 0.0) {
            if (remaining > kChunk) {
                p *= std::exp(kChunk);
                remaining -= kChunk;
            } else {
                p *= std::exp(remaining);
                remaining = 0.0;
            }
        }
    } while (p > 1.0);
    return k - 1;
}

}  // namespace outerspace
