#include "wolff/exponents.hpp"

#include "wolff/errors.hpp"

namespace wolff {

Exponents::Exponents(double p, double q)
        : p_(p)
        , q_(q) {
    if (!(p > 1.0) || !std::isfinite(p)) throw Error("exponents: p must satisfy 1 < p < inf");
    if (!(q > 0.0) || !(q < p)) throw Error("exponents: q must satisfy 0 < q < p");
    pprime_ = p / (p - 1.0);
    s_ = q * (p - 1.0) / (p - q);
}

} // namespace wolff
