#include "wpmix/oracles.hpp"

#include <cmath>
#include <limits>

#include "wpmix/errors.hpp"

namespace wpmix::oracles {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr int kMaxIter = 400;
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

double expint_e1(double x) {
    if (!(x > 0.0)) throw NumericError("expint_e1 needs x > 0");
    if (x <= 1.0) {
        // -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k k!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= kMaxIter; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::fabs(add) < kEps * std::fabs(sum)) {
                return sum - kEulerGamma - std::log(x);
            }
        }
        throw NumericError("expint_e1 series did not converge");
    }
    // Modified Lentz for the continued fraction
    //   E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))).
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h * std::exp(-x);
    }
    throw NumericError("expint_e1 continued fraction did not converge");
}

}  // namespace wpmix::oracles
