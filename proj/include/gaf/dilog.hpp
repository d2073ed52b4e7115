#pragma once

namespace gaf {

/// Li_2(x) = sum_{j>=1} x^j / j^2 for x in [0, 1]. Power series for x <= 1/2,
/// reflection Li_2(x) = pi^2/6 - log x log(1-x) - Li_2(1-x) above.
double dilog(double x);

}  // namespace gaf
