#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "schrosym/diffop.hpp"

namespace schrosym {

enum class TimeProfile { Polynomial, Exponential, Trigonometric, Unrestricted };
const char* time_profile_name(TimeProfile p);

/// Parameterization of a first-order generator:
///   xi^a = -(alpha/2) x_a + theta^{ab} x_b + nu_a,  alpha = -d xi0/dt,
///   eta0 = (alpha'/4) x^2 - nu_a' x_a + K,
///   Q = i (xi0 d_t + xi^a d_a + div(xi)/2) - eta0.
struct GeneratorAnsatz {
  Expr xi0;
  Expr theta12, theta13, theta23;
  std::array<Expr, 3> nu;
  Expr K;
  TimeProfile profile = TimeProfile::Unrestricted;

  Expr alpha() const;
  Expr theta(int a, int b) const;  // a, b in 1..3, antisymmetric
  Expr xi(int a) const;
  Expr eta0() const;
};

class AnsatzError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws AnsatzError when xi0 or nu depend on x, theta depends on anything
/// but parameters, or alpha * nu_a is not identically zero.
void validate(const GeneratorAnsatz& a);

DiffOperator build_generator(const GeneratorAnsatz& a);

/// Reads xi0, xi^a, eta0 back from a first-order operator.
struct GeneratorFields {
  Expr xi0;
  std::array<Expr, 3> xi;
  Expr eta0;
};
GeneratorFields extract_fields(const DiffOperator& q);

/// Recovers the ansatz when q has the (xi0(t), rotation + dilation + nu(t)) shape.
std::optional<GeneratorAnsatz> ansatz_from_generator(const DiffOperator& q);

struct TaggedResidual {
  std::string tag;  // xi0-space, shear, trace, first-order, multiplier, gauge, scalar, radial, angular
  int component = 0;
  Expr value;
};

/// Determining equations read off [q, L] - alpha L term by term, with
/// alpha_p = -d xi0/dt. xi0-space: d_a xi0; shear: traceless part of d_a xi^b;
/// trace: its trace; first-order: d_a coefficients; multiplier: the multiplication term.
std::vector<TaggedResidual> raw_determining_residuals(const Potential& p, const DiffOperator& q);

/// gauge (three components of d_a K) and scalar (the equation on A0).
std::vector<TaggedResidual> reduced_residuals(const Potential& p, const GeneratorAnsatz& a);

/// radial (1 residual) and angular (3 residuals): contractions of the gauge equations with x.
std::vector<TaggedResidual> algebraic_consequences(const Potential& p, const GeneratorAnsatz& a);

/// The scalar equation as printed, with the (alpha''/2) r^2 term; kept for comparison.
Expr scalar_equation_as_printed(const Potential& p, const GeneratorAnsatz& a);

/// Classifies a function of t: polynomial of degree <= 2, sums of exp(c t),
/// or trigonometric in c t. Returns Unrestricted otherwise.
TimeProfile classify_time_dependence(const Expr& f);

/// True iff xi0 and every nu_a fall into the admissible classes.
bool time_profile_check(const GeneratorAnsatz& a);

/// Scalar part g A0 = V - (e^2/2)(A1^2 + A2^2).
Expr scalar_part(const Potential& p);

}  // namespace schrosym
