#pragma once

#include "epb/brackets.hpp"
#include "epb/curve.hpp"

namespace epb {

/// phi_p substitution followed by leaf normal form: x_{2j} -> sum_i f_i^j e_i,
/// x_{2j+3} -> sum_i f_i^j g_i e_i (odd parity in the u_i = f_i + c basis).
MPoly phi_image(Parity parity, int p, const MPoly& F);

/// Normal form modulo the per-index curve relation: even g_i^2 ->
/// P_ev(f_i) + Q(f_i) g_i; odd u_i g_i^2 -> P_od(u_i - c) + Q(u_i - c) g_i.
MPoly leaf_reduce(Parity parity, const MPoly& poly);

/// Casimirs of the n-variable structure lie in ker(phi_p) for the maximal
/// leaf (p = n/2 - 1 even, (n-1)/2 odd); checked identically in parameters.
bool verify_kernel(int n);

/// phi_p({x_r, x_s}) = {phi_p(x_r), phi_p(x_s)} with the leaf-algebra bracket
/// rules, denominators cleared to a power of (f_1 - f_2). Small instances
/// only: 2p < n, p <= 2, n <= 6.
bool verify_leaf_homomorphism(int n, int p, int jobs = 1);

}  // namespace epb
