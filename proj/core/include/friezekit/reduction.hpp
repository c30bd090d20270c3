#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "friezekit/dual.hpp"
#include "friezekit/expr.hpp"
#include "friezekit/frieze.hpp"
#include "friezekit/linalg.hpp"
#include "friezekit/quiver.hpp"
#include "friezekit/relations.hpp"

namespace friezekit {

// Integer bases, one vector per row.
struct KernelImage {
  IntMatrix image;
  IntMatrix kernel;
};

// Saturated Z-bases of ker B and (ker B)^perp from Hermite normal forms.
KernelImage integer_kernel_image(const ExchangeMatrix& b);
// Hardcoded bases for the supported families (none for the rest).
std::optional<KernelImage> printed_basis(const FamilySpec& spec);
// D odd, D6, E6, E7, E8.
bool reduction_supported(const FamilySpec& spec);

struct ReducedSystem {
  FamilySpec family;
  Quiver quiver;     // drawn orientation
  ExchangeMatrix b;  // orientation the frieze map runs on
  MutationPlan plan;
  IntMatrix image;   // 2m x n; row j defines y^j = prod_i X_i^{v_{j,i}}
  IntMatrix kernel;
  IntMatrix a;       // image rows, then kernel rows
  RatMatrix bhat;
  RatMatrix c;       // bhat^-1
  std::vector<std::string> ylabels;
  bool nonstandard_basis = false;
  std::optional<RatMatrix> printed_c;
  // Section: X_free = y^W, every other X pinned to 1.
  std::vector<int> free_columns;
  IntMatrix section;

  int dim() const { return static_cast<int>(image.rows()); }
  int m() const { return dim() / 2; }
  int size() const { return quiver.size(); }
};

// Throws Unsupported outside reduction_supported.
ReducedSystem build_reduction(const Quiver& q);
// Same construction on caller-supplied bases; flagged nonstandard unless they
// equal the printed ones.
ReducedSystem build_reduction(const Quiver& q, const KernelImage& basis);

// A^-T B A^-1.
RatMatrix block_form(const ReducedSystem& rs);
bool block_identity_holds(const ReducedSystem& rs);
bool matches_printed_c(const ReducedSystem& rs);

template <class V>
std::vector<V> project(const ReducedSystem& rs, const std::vector<V>& x);
template <class V>
std::vector<V> lift(const ReducedSystem& rs, const std::vector<V>& y);
// Explicit per-family reduced map.
template <class V>
std::vector<V> reduced_step_explicit(const ReducedSystem& rs, const std::vector<V>& y);
// Lift, one frieze step, project.
template <class V>
std::vector<V> reduced_step_generic(const ReducedSystem& rs, const std::vector<V>& y);

// Explicit map on rationals; a zero component throws BadSpecialization.
std::vector<Rat> reduced_step(const ReducedSystem& rs, const std::vector<Rat>& y);

// --- functions on the reduced space ----------------------------------------

using ReducedFn = std::function<DualRat(const std::vector<DualRat>& y)>;

struct NamedFn {
  std::string name;
  ReducedFn f;
};

// y as dual variables (one slot per coordinate).
std::vector<DualRat> dual_point(const std::vector<Rat>& y);
Rat evaluate(const NamedFn& f, const std::vector<Rat>& y);

// Expression on the frieze evaluated at time n, through the lift of y to
// column 0. Offsets below zero are moved up by multiples of `period`.
NamedFn lifted_quantity(const ReducedSystem& rs, const std::string& name, const Expr& e, int n, int period);
// J, Jt, K (and Jp = J' for D6, E7) at time n, in the conventions of the
// integrability computation.
NamedFn reduced_quantity(const ReducedSystem& rs, const std::string& symbol, int n);

// {f, g}(y) = sum_ij c_ij y_i y_j df/dy_i dg/dy_j.
Rat poisson_bracket(const ReducedSystem& rs, const NamedFn& f, const NamedFn& g, const std::vector<Rat>& y);
Rat poisson_bracket(const ReducedSystem& rs, const std::vector<Rat>& y, const std::vector<Rat>& df,
                    const std::vector<Rat>& dg);

std::vector<NamedFn> first_integrals(const ReducedSystem& rs);

struct BracketRelation {
  std::string id;
  NamedFn f;
  NamedFn g;
  NamedFn expected;
  std::string citation;
};
std::vector<BracketRelation> printed_brackets(const ReducedSystem& rs);

// Quantities printed directly in reduced coordinates, paired with the lift.
struct FormulaOracle {
  std::string id;
  NamedFn printed;
  NamedFn lifted;
};
std::vector<FormulaOracle> printed_formulas(const ReducedSystem& rs);

// Q(lambda^u X) = lambda^weight Q(X) for kernel row u applied to column 0.
struct ScalingClaim {
  std::string id;
  Expr quantity;
  int n = 0;
  int period = 0;
  int kernel_index = 0;
  int weight = 0;
  std::string citation;
};
std::vector<ScalingClaim> printed_scaling_claims(const ReducedSystem& rs);

// --- batteries ---------------------------------------------------------------

struct BatteryOptions {
  int trials = 10;
  std::uint64_t rng_seed = 1;
  unsigned threads = 0;
};

// Random reduced point for one trial.
std::vector<Rat> reduced_point(const ReducedSystem& rs, std::uint64_t seed);

CheckReport commuting_square_check(const ReducedSystem& rs, const BatteryOptions& opt);
CheckReport generic_step_check(const ReducedSystem& rs, const BatteryOptions& opt);
std::vector<CheckReport> bracket_checks(const ReducedSystem& rs, const BatteryOptions& opt);
std::vector<CheckReport> formula_checks(const ReducedSystem& rs, const BatteryOptions& opt);
CheckReport scaling_invariance_check(const ReducedSystem& rs, const ScalingClaim& claim, const BatteryOptions& opt);

// J^T Omega(phi(x)) J = Omega(x) for Omega_ij = b_ij / (x_i x_j); any family.
CheckReport presymplectic_check(const Quiver& q, const BatteryOptions& opt);

// Invariance, involution, Jacobian rank == m (max over trials) and bracket
// preservation by the reduced map.
std::vector<CheckReport> integrability_battery(const ReducedSystem& rs, const std::vector<NamedFn>& integrals,
                                               const BatteryOptions& opt);
std::vector<CheckReport> integrability_battery(const ReducedSystem& rs, const BatteryOptions& opt);

}  // namespace friezekit
