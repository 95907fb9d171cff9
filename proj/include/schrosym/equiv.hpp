#pragma once

#include <array>
#include <string>

#include "schrosym/diffop.hpp"

namespace schrosym {

/// Change of variables (t, x) -> (t~, x~) with psi = M(t~, x~) psi~(t~, x~).
/// Both charts reuse the coordinate symbols t, x1, x2, x3: the forward maps
/// express old coordinates in new ones, the inverse maps the reverse.
/// The time map depends on t~ only.
struct PointTransformation {
  std::string name;
  Expr t_of_new;
  std::array<Expr, 3> x_of_new;
  Expr log_multiplier;  // ln M in new coordinates
  Expr new_t_of_old;
  std::array<Expr, 3> new_x_of_old;

  Expr multiplier() const { return exp(log_multiplier); }

  /// Throws std::logic_error when the stored inverse does not undo the forward
  /// map or the spatial Jacobian is not rotation times scale.
  void verify() const;
};

/// Substitutes old coordinates by their expressions in new ones.
Expr to_new(const PointTransformation& tr, const Expr& old_expr);
/// Substitutes new coordinates by their expressions in old ones.
Expr to_old(const PointTransformation& tr, const Expr& new_expr);

/// M^-1 . q . M in the new variables.
DiffOperator conjugate_operator(const PointTransformation& tr, const DiffOperator& q);

/// Conjugated Schrödinger operator split as factor * (i d_t + ...).
struct TransformedOperator {
  Expr factor;
  DiffOperator normalized;
};
TransformedOperator transform_schrodinger(const PointTransformation& tr, const DiffOperator& L);

/// Reads a normalized operator i d_t + (1/2)Laplacian - i e A.grad - (i e/2) div A - V
/// back into a potential; throws std::invalid_argument if it is not of that form.
Potential potential_from_operator(const DiffOperator& op, const Expr& e = Expr(1));

/// A -> A + grad chi, V recomputed from A0 when the potential carries it.
/// Throws std::invalid_argument when chi depends on t or x3.
Potential gauge_apply(const Potential& p, const Expr& chi);
/// Identity change of variables with multiplier exp(-i e chi); conjugation by it
/// maps symmetries of p to symmetries of gauge_apply(p, chi).
PointTransformation gauge_conjugation(const Expr& chi, const Expr& e = Expr(1));

/// t~ = (a t + b)/(c t + d), x~ = x sqrt(ad - bc)/(c t + d); throws when ad - bc is zero.
PointTransformation mobius_general(const Expr& a, const Expr& b, const Expr& c, const Expr& d);
/// t~ = (nu t + mu)/(t + lambda).
PointTransformation mobius_time(const Expr& nu, const Expr& mu, const Expr& lambda);
/// t = exp(2 w t~), x = sqrt(2w) exp(w t~) x~ with the multiplier fixed by exact conjugation.
PointTransformation oscillator_map(const Expr& omega);
/// The same map with the multiplier exactly as printed: exp(i w (x~^2 - i t~)).
PointTransformation oscillator_map_printed(const Expr& omega);
/// x~ = x - k t^2/2, t~ = t, psi~ = exp(-i t k.x + (i/3) k^2 t^3) psi.
PointTransformation free_fall_map(const std::array<Expr, 3>& kappa);
PointTransformation identity_transformation();

/// Parses "gauge:<chi>", "mobius:nu,mu,lambda", "oscillator:w", "freefall:k1,k2,k3".
PointTransformation parse_transformation(const std::string& spec, const Expr& e = Expr(1));

}  // namespace schrosym
