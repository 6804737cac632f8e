#pragma once

#include <stdexcept>
#include <utility>

#include "epb/brackets.hpp"
#include "epb/curve.hpp"

namespace epb {

class CancellationFailure : public std::runtime_error {
public:
  explicit CancellationFailure(int idx)
      : std::runtime_error("casimir: generator index " + std::to_string(idx) +
                           " failed to cancel"),
        index(idx) {}
  int index;
};

class NotLinearInYm2 : public std::runtime_error {
public:
  NotLinearInYm2() : std::runtime_error("casimir: determinant not linear in y_{-2}") {}
};

/// Laurent realization of a generator: even parity x_{2i} = f^i,
/// x_{2i+3} = f^i g; odd parity the y-elements y_{2i} = u^i, y_{2i+3} = u^i g.
/// Localized mode (u invertible) so products of any two realizations reduce.
CurveElem laurent_x(Parity parity, int index);

/// Product of two realizations in Frac(F), re-expressed as a linear
/// combination of abstract generators (X-class, index in Z) with parameter
/// coefficients.
MPoly frac_product_x(Parity parity, int i, int j);

/// Determinant of a matrix of generator-linear entries, expanded in the
/// symmetric algebra (the generators commute and are not re-reduced).
MPoly sym_det(const std::vector<std::vector<MPoly>>& m);

/// The two even-n Casimirs of degree n/2 (n = 4 has its own determinant
/// combination).
std::pair<MPoly, MPoly> casimir_even(int n);

/// The odd-n determinants \hat C_0, \hat C_1 in the y-generators, before the
/// A/B split (exposed for the frozen small-n oracles).
std::pair<MPoly, MPoly> casimir_odd_dets(int n);

/// The odd-n Casimir C = A0 B1 - A1 B0 of degree n, converted to x-variables.
MPoly casimir_odd(int n);

/// Leibniz extension: {F, G} = sum_{i<j} (dF/dx_i dG/dx_j - dF/dx_j dG/dx_i) {x_i, x_j}.
MPoly poisson_extend(const BracketTable& table, const MPoly& F, const MPoly& G);

/// True iff {C, x_i} vanishes identically (parameters included) for every
/// generator of the table.
bool verify_central(const BracketTable& table, const MPoly& C, int jobs = 1);

}  // namespace epb
