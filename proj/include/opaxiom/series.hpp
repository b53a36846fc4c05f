#pragma once

#include <cstddef>

#include "opaxiom/ball.hpp"
#include "opaxiom/rational.hpp"

namespace opaxiom::series {

struct SeriesConfig {
    /// Absolute error allowed on top of whatever error the inputs carry.
    BigRational target = pow2(-64);
    std::size_t max_terms = 1'000'000;
    /// Results whose magnitude provably exceeds 2^max_log2 raise ResourceError.
    long max_log2 = (1L << 20) + 64;

    SeriesConfig with_target(BigRational t) const {
        SeriesConfig c = *this;
        c.target = std::move(t);
        return c;
    }
};

/// e^a. The argument is halved until |a| <= 2^-8, the Taylor series is
/// summed with a factorial tail bound and the result squared back.
Ball exp_e(const BigRational& a, const SeriesConfig& cfg);
Ball exp_e(const Ball& a, const SeriesConfig& cfg);

/// ln a for a > 0. a is scaled by 2^k into (2/3, 4/3], the series
/// 2 * sum b^(2n+1)/(2n+1) with b = (a-1)/(a+1) is summed with a geometric
/// tail bound, and k ln 2 is added back (ln 2 from the same series at b = 1/3).
Ball ln_e(const BigRational& a, const SeriesConfig& cfg);
Ball ln_e(const Ball& a, const SeriesConfig& cfg);

/// a^b, the `+++` operation. Exact for integer exponents and perfect
/// powers; otherwise e^(b ln a). Negative bases need integer exponents.
Ball pow(const Ball& a, const Ball& b, const SeriesConfig& cfg);

/// The `---` operation: x with x^b = a, i.e. a^(1/b). Needs a > 0, b != 0.
Ball root(const Ball& a, const Ball& b, const SeriesConfig& cfg);

/// The `///` operation: log base b of a, ln a / ln b. Needs a, b > 0, b != 1.
Ball log(const Ball& a, const Ball& b, const SeriesConfig& cfg);

}  // namespace opaxiom::series
