#pragma once

#include "qhat/laurent.hpp"

namespace qhat {

/// Quantum integer [n] with v replaced by v^d.
LaurentPoly qint(int n, int d = 1);

/// Quantum factorial [n]! = [1][2]...[n] with v replaced by v^d; [0]! = 1.
LaurentPoly qfact(int n, int d = 1);

/// Gaussian binomial [a; t] from the product formula, v replaced by v^d.
/// Defined for every integer a (negative allowed) and t >= 0.
LaurentPoly qbinom(int a, int t, int d = 1);

}  // namespace qhat
