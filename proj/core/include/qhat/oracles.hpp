#pragma once

#include <gmpxx.h>

#include <map>

#include "qhat/root_datum.hpp"

namespace qhat {

/// Weyl dimension formula, prod over positive roots of
/// <lambda + rho, beta^vee> / <rho, beta^vee>.
mpz_class weyl_dim_oracle(const RootDatum& datum, const Weight& lambda);

/// Weight multiplicities by Freudenthal's recursion over dominant weights,
/// extended to all weights by Weyl-group invariance.
std::map<Weight, int> freudenthal_oracle(const RootDatum& datum, const Weight& lambda);

}  // namespace qhat
