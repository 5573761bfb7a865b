#pragma once

#include <cmath>

namespace wolff {

/// Exponent pair 1 < p, 0 < q < p with the derived quantities p' = p/(p-1)
/// and s = q(p-1)/(p-q). Construction validates the strict inequalities.
class Exponents {
public:
    Exponents(double p, double q);

    double p() const { return p_; }
    double q() const { return q_; }
    double p_prime() const { return pprime_; }
    /// Exponent of the Wolff-potential Lebesgue space, q(p-1)/(p-q).
    double s() const { return s_; }
    /// p' - 1 = 1/(p-1), the power applied to kernel averages and masses.
    double pm1() const { return pprime_ - 1.0; }

private:
    double p_, q_, pprime_, s_;
};

/// pow for nonnegative bases with fast paths for exponents 1 and 2 (the p = 2
/// case is exercised constantly). 0^e = 0 for every e > 0.
inline double powr(double base, double expo) {
    if (expo == 1.0) return base;
    if (expo == 2.0) return base * base;
    if (base == 0.0 && expo > 0.0) return 0.0;
    return std::pow(base, expo);
}

} // namespace wolff
