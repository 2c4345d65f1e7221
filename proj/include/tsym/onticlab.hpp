#pragma once

#include "tsym/opmodel.hpp"
#include "tsym/random.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

// Finite ontic extensions p(a,b,lambda|x,y) and the conditional-independence
// checks behind the no-go argument.
//
// Joint tables are stored as exact rationals; every table built from the
// bundled examples is dyadic, so the toy-model identities hold exactly
// rather than within tolerance.  Conditional checks only quantify over
// tuples whose conditioning event has positive probability; skipped cells
// are counted, never reported as violations.

namespace tsym {

using Rat = boost::multiprecision::cpp_rational;

struct OnticExtension {
  Labels X, A, Y, B;
  Labels lambda;
  // p(a,b,lambda|x,y), indexed [(((x*|Y|+y)*|A|+a)*|B|+b)*|L|+l].
  std::vector<Rat> joint;

  const Rat& at(int x, int y, int a, int b, int l) const;
  Rat& at(int x, int y, int a, int b, int l);
  std::size_t size() const {
    return X.size() * Y.size() * A.size() * B.size() * lambda.size();
  }

  void validate(const Tolerances& tol = {}) const;
};

struct CheckReport {
  std::string condition;
  bool holds = true;
  double worst_violation = 0.0;
  std::string witness;  // the tuple achieving the worst violation
  int skipped = 0;      // zero-probability conditioning cells

  std::string to_string() const;
};

// Exact lambda-marginal, indexed like a BehaviorTable.
std::vector<Rat> marginalize_exact(const OnticExtension& ext);
BehaviorTable marginalize(const OnticExtension& ext);

// p(a|x,y) = p(a|x) and p(lambda|a,x,y) = p(lambda|a,x).
CheckReport check_no_retrocausality(const OnticExtension& ext);

// p(b|a,lambda,x,y) = p(b|lambda,y); `weak` checks the footnote variant
// p(b|a,lambda,x,y) = p(b|lambda,x,y) instead.
CheckReport check_lambda_mediation(const OnticExtension& ext,
                                   bool weak = false);

// Full factorization p(a,b,lambda|x,y) = p(a|x,lambda)p(b|y,lambda)p(lambda).
CheckReport check_local_causality(const OnticExtension& ext);

struct IndependenceReports {
  CheckReport measurement_independence;  // p(lambda|x,y) = p(lambda)
  CheckReport parameter_independence;    // p(b|l,x,y)=p(b|l,y), p(a|l,x,y)=p(a|l,x)
  CheckReport outcome_independence;      // p(b|a,l,x,y) = p(b|l,x,y)

  bool all_hold() const {
    return measurement_independence.holds && parameter_independence.holds &&
           outcome_independence.holds;
  }
};

IndependenceReports check_independences(const OnticExtension& ext);

// The two-bit toy model of the Price experiment:
// Lambda = {(l0,l1)}, p(a,b,l0,l1|x,y) = (1/4) d_{l_y,b} d_{l_x,a}.
OnticExtension build_toy_model_extension();

struct PsiClassification {
  bool psi_ontic = false;
  bool applicable = true;  // false when no pair of distinct states exists
  // Witness for the epistemic case: two preparations sharing an ontic state.
  std::string witness;
};

// state_ids[x * |A| + a] names the pure state prepared by (x,a); pairs with
// distinct ids must have disjoint supports of p(lambda|a,x) to be psi-ontic.
PsiClassification check_psi_ontic(const OnticExtension& ext,
                                  const std::vector<int>& state_ids);

// Exchanges the roles of (a,x) and (b,y): result(b,a,l|y,x) = ext(a,b,l|x,y).
OnticExtension swap_roles(const OnticExtension& ext);

// Brute-force search over bijections f with
// ext2(b,a,f(l)|y,x) = ext(a,b,l|x,y); |Lambda| capped at 8.
std::optional<std::vector<int>> find_ontological_time_reverse(
    const OnticExtension& ext, const OnticExtension& ext2);

// Default psi-ontic extension of the trivial-measurement Price experiment:
// one ontic state per preparation branch, delta epistemic states.
OnticExtension build_price_psi_ontic_extension();

struct PriceDemoReport {
  bool applicable = true;
  std::string reason;           // when inapplicable
  bool supports_disjoint = false;
  std::vector<std::vector<int>> support_by_x;  // lambda indices in supp p(l|x)
  CheckReport reversed_measurement_independence;  // must fail
  bool contradiction = false;

  std::string to_string(const Labels& lambda_labels) const;
};

// Mechanizes the psi-ontology contradiction: disjoint supports of p(l|x)
// force measurement independence to fail in the role-swapped table.
PriceDemoReport price_contradiction_demo(
    const OnticExtension& ext, const std::vector<int>& state_ids);
PriceDemoReport price_contradiction_demo();  // default extension

// Random generators for the property suites (small exact rationals).
OnticExtension random_ontological_model(int nx, int na, int ny, int nb,
                                        int n_lambda, Rng& rng);
OnticExtension random_locally_causal_extension(int nx, int na, int ny, int nb,
                                               int n_lambda, Rng& rng);

}  // namespace tsym
