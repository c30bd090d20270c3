#include "friezekit/frieze.hpp"

namespace friezekit {

std::string to_string(Mode m) { return m == Mode::Symbolic ? "symbolic" : "specialized"; }

MutationPlan make_plan(const Quiver& dynamics) {
  MutationPlan plan;
  plan.order = admissible_order(dynamics);
  ExchangeMatrix b = dynamics.matrix;
  const int n = b.size();
  for (int k : plan.order) {
    MutationStep s;
    s.vertex = k;
    for (int i = 0; i < n; ++i) {
      if (b(i, k) > 0) s.in.emplace_back(i, b(i, k));
      if (b(k, i) > 0) s.out.emplace_back(i, b(k, i));
    }
    plan.steps.push_back(std::move(s));
    b = mutate(b, k);
  }
  if (!(b == dynamics.matrix)) throw InternalError("composite mutation does not restore the quiver");
  return plan;
}

FriezeTable<Rat> frieze_units(const Quiver& q, int n_max) {
  return frieze_sequence(q, std::vector<Rat>(static_cast<std::size_t>(q.size()), Rat(1)), n_max);
}

FriezeTable<Rat> frieze_specialized(const Quiver& q, std::vector<Rat> init, int n_max) {
  for (const auto& v : init)
    if (v == 0) throw UsageError("initial values must be nonzero");
  return frieze_sequence(q, std::move(init), n_max);
}

FriezeTable<LaurentPoly> frieze_symbolic(const Quiver& q, int n_max, const FriezeOptions& opt) {
  VarsPtr vars = make_variables(q.labels);
  std::vector<LaurentPoly> init;
  for (int i = 0; i < q.size(); ++i) init.push_back(LaurentPoly::variable(vars, static_cast<std::size_t>(i)));
  return frieze_sequence(q, std::move(init), n_max, opt, Mode::Symbolic);
}

RatMatrix jacobian_of_steps(const FriezeTable<Rat>& t, int n, int steps) {
  if (steps < 0) throw UsageError("negative step count");
  const std::size_t d = static_cast<std::size_t>(t.quiver.size());
  std::vector<DualRat> x;
  for (std::size_t i = 0; i < d; ++i) x.push_back(DualRat::variable(t.at(static_cast<int>(i), n), d, i));
  for (int s = 0; s < steps; ++s) x = apply_plan(t.plan, std::move(x));
  RatMatrix j(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) j(i, k) = x[i].derivative(k);
  return j;
}

RatMatrix jacobian_of_step(const FriezeTable<Rat>& t, int n) { return jacobian_of_steps(t, n, 1); }

bool presymplectic_invariant(const Quiver& q, const std::vector<Rat>& x) {
  FriezeTable<Rat> t = frieze_specialized(q, x, 1);
  const ExchangeMatrix& b = q.matrix;
  const std::size_t d = x.size();
  auto omega = [&](const std::vector<Rat>& p) {
    RatMatrix o(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        o(i, k) = Rat(b(static_cast<int>(i), static_cast<int>(k))) / (p[i] * p[k]);
    return o;
  };
  RatMatrix j = jacobian_of_step(t, 0);
  return j.transpose() * omega(t.columns[1]) * j == omega(t.columns[0]);
}

}  // namespace friezekit
