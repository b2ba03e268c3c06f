#include "reabc/rng.hpp"
#include "reabc/distributions.hpp"

namespace reabc {

double Rng::normal() {
    return normal_quantile(open01());
}

} // namespace reabc
