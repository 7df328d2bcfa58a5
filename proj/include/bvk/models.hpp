#pragma once
// Concrete algebras and operators: polyvector fields with the divergence
// operator, an independent Schouten bracket, Koszul complexes and a few small
// laboratories with higher-order pieces.
//
// Degrees are stored unshifted: x_i has degree 0 and xi_i degree 1 on
// polyvectors, so the wedge product has degree 0 and the bracket degree -1.
// The Gerstenhaber checker applies the shift |a| - 1 at the check site, where
// the product gets offset +1 and the bracket offset 0.

#include "bvk/diffop.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bvk {

/// A named algebra with an odd operator D, its degree +1 part d (zero when
/// absent) and generator weights that make every weight slice finite.
struct Model {
  std::string name;
  TablePtr table;
  Operator D;
  Operator d;
  std::vector<int> weights;
};

/// x1..xn (degree 0) then xi1..xin (degree 1); D = Delta = sum_i d^2/dx_i dxi_i,
/// d = 0, all weights 1. Throws DomainError for n < 1.
Model polyvector_model(int n);

/// Delta on a table with the polyvector layout.
Operator divergence_operator(const TablePtr& table);

/// True when the table is x_1..x_n of even degree followed by n odd xi_i.
bool has_polyvector_layout(const GeneratorTable& table);

/// Classical Schouten bracket through left derivatives,
///   [P, Q] = sum_i ( (-1)^{|P|+1} dP/dxi_i dQ/dx_i - dP/dx_i dQ/dxi_i ),
/// so [xi_i, x_j] = delta_ij and [xi_1, x_1 xi_2] = xi_2. Arguments must be
/// parity-homogeneous and live on a table with the polyvector layout.
Element schouten_oracle(const Element& a, const Element& b);

/// The global sign c with bv_bracket(Delta, a, b) = c * schouten_oracle(a, b),
/// read off the pair (xi_1, x_1).
int calibrate_schouten_sign(const Model& polyvector);

/// Exterior algebra on xi1, xi2, xi3 (degree 1) with D = d^3/dxi1 dxi2 dxi3,
/// order 3 and degree -3.
Model exterior3_model();

/// Polyvectors on R^2 with the Poisson differential d = [xi1 xi2, .] =
/// xi1 d/dx2 - xi2 d/dx1 and D = d + Delta.
Model mixed_model();

/// ad_P = [P, .] for the Schouten bracket above, as a first-order operator
///   sum_i ( (-1)^{|P|+1} dP/dxi_i * d/dx_i - dP/dx_i * d/dxi_i ).
Operator schouten_adjoint(const Element& p);

/// Polyvectors on R^3 with d = [x3 xi1 xi2, .] and D = d + Delta. The bivector
/// is Poisson and divergence free, so D^2 = 0, and H(A, d) is large.
Model poisson3_model();

/// Square-zero D with pieces of order 1, 2, 3 in degrees +1, -1, -3, built as
/// (1 - A) d0 (1 + A) with d0 = xi1 d/dx1 and A = x2 d^2/dxi1 dxi2 + x1 d^2/dxi1 dxi3.
Model order3_model();

/// A Koszul complex: even x_i of degree 2 and weight 1, odd xi_i of degree
/// 2 m_i - 1 and weight m_i, d = sum_i x_i^{m_i} d/dxi_i of degree +1.
/// With `with_laplacian`, D = d + sum_i d^2/dx_i dxi_i, whose extra part is odd
/// of negative degree -1 - 2 m_i; otherwise D = d. Throws DomainError if D^2 != 0.
Model koszul_complex_model(const std::vector<unsigned>& exponents, bool with_laplacian = false);

/// Delta + (multiplication by xi_1): odd, but its square is nonzero.
Operator converse_perturbation(const Model& polyvector);

/// Builtin models by name with integer parameters:
///   polyvector n=<int>, exterior3, mixed, poisson3, order3,
///   koszul m=<int>[,<int>...] laplacian=0|1.
Model builtin_model(const std::string& name, const std::map<std::string, std::string>& params);

/// Names accepted by builtin_model.
std::vector<std::string> builtin_model_names();

}  // namespace bvk
