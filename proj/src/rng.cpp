#include "sbfr/rng.hpp"

#include <cmath>

namespace sbfr {

Point uniform_point(const InputDomain& domain, Rng& rng) {
    std::vector<double> c(domain.dim());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = uniform(rng, domain.lower()[i], domain.upper()[i]);
        // lo + w*u can round up to the excluded upper bound.
        if (!(c[i] < domain.upper()[i])) c[i] = std::nextafter(domain.upper()[i], domain.lower()[i]);
    }
    return Point(std::move(c));
}

Orientation random_first_orthant_orientation(std::size_t d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> c(d);
    for (;;) {
        double n2 = 0.0;
        for (double& x : c) {
            x = std::abs(gauss(rng));
            n2 += x * x;
        }
        if (n2 > 1e-300) return Orientation::normalized(std::move(c));
    }
}

} // namespace sbfr
