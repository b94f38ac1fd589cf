#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sc/path_set.hpp"
#include "sc/spec.hpp"

namespace sc {

// One side of an identity is a linear combination of integral objects.
struct Term {
  double coeff = 1.0;
  std::variant<IntegralSpec, KernelIntegralSpec, CombinedSpec> spec;

  std::string describe() const;
};

double eval_term(const Term& term, const PathSet& path);

// A verifiable equality: sum(lhs) = sum(rhs) with probability 1 in the
// mean-square limit, evaluated on shared noise.
struct Identity {
  std::string id;
  std::string citation;   // anchor into catalog_bibliography()
  std::string statement;  // printable form of the equality
  std::vector<Term> lhs;
  std::vector<Term> rhs;
  double t = 0.0;
  double T = 1.0;
  int wiener_dims = 1;                   // Wiener components the paths must carry
  std::vector<MartingaleModel> models;   // martingale drivers the paths must carry
  bool stochastic = true;                // any random driver or integrand involved
  // Both sides regroup the same discrete sum, so their difference is
  // floating-point noise at any N rather than a decaying quantity.
  bool exact_discrete = false;

  double eval_lhs(const PathSet& path) const;
  double eval_rhs(const PathSet& path) const;
  std::size_t max_depth() const;
};

}  // namespace sc
