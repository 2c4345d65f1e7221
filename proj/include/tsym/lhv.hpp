#pragma once

#include "tsym/choibridge.hpp"
#include "tsym/onticlab.hpp"
#include "tsym/opmodel.hpp"

#include <string>
#include <vector>

// Local-hidden-variable feasibility as a linear program over deterministic
// strategies, with constructive certificates in both directions.
//
// Every verdict is re-checked by independent arithmetic before it is
// returned: feasible weights must reproduce the table, and separating
// functionals are re-evaluated over all strategies in exact rational
// arithmetic (doubles convert to rationals losslessly).  If the floating
// solve cannot be certified either way, the LP is re-run with exact
// rational pivoting.

namespace tsym {

inline constexpr double kLpTolerance = 1e-8;

struct DeterministicStrategy {
  std::vector<int> f_a;  // x -> a
  std::vector<int> f_b;  // y -> b
};

// All |A|^|X| * |B|^|Y| strategies in lexicographic order over (f_a, f_b);
// throws when the count exceeds 10^6.
std::vector<DeterministicStrategy> enumerate_strategies(int nx, int na,
                                                        int ny, int nb);

// The deterministic behavior of one strategy, BehaviorTable-indexed 0/1s.
std::vector<double> strategy_behavior(const DeterministicStrategy& s, int nx,
                                      int na, int ny, int nb);

struct LhvCertificate {
  bool feasible = false;
  // Feasible case: one weight per enumerated strategy.
  std::vector<double> weights;
  // Infeasible case: Bell functional indexed like the behavior table, with
  //   achieved = <functional, behavior> > bound = max over strategies.
  std::vector<double> functional;
  double bound = 0.0;
  double achieved = 0.0;
  // True when the verdict was confirmed in exact rational arithmetic.
  bool exactly_verified = false;
};

LhvCertificate lhv_feasibility(const BehaviorTable& t);

std::string certificate_to_text(const LhvCertificate& cert,
                                const BehaviorTable& t);

// Max over the eight CHSH facets, computed from correlators; a fully
// no-signalling binary behavior is LHV-feasible iff this is <= 2.
double chsh_facet_max(const BehaviorTable& t);

struct ChshReport {
  double value = 0.0;  // (1/4) sum p(a xor b = xy | x, y)
  LhvCertificate certificate;
  IsomorphismReport isomorphism;
  double facet_max = 0.0;
  bool facets_apply = false;  // behavior no-signalling in both directions
  bool consistent = false;    // LP verdict vs facet check / 3/4 threshold

  std::string to_string() const;
};

ChshReport chsh_violation_report(const Experiment& e);

struct CrRow {
  int n = 0;
  double marginal_deviation = 0.0;  // worst |p(a|x) - 1/2|, |p(b|y) - 1/2|
  bool feasible = false;
  double chained = 0.0;              // chained statistic on the behavior
  double chained_closed_form = 0.0;  // 2N sin^2(pi / 4N)
  double classical_bound = 0.0;      // min of the statistic over strategies
  double max_pair_deviation = 0.0;   // |P(a=b|x,y) - cos^2((beta-alpha)/2)|
};

// Chained statistic: the N anticorrelation probabilities at (k,k), the N-1
// at (k+1,k), and the closing correlation probability at (0,N-1).
double chained_statistic(const BehaviorTable& t, int n);
double chained_statistic(const std::vector<double>& table, int n);

std::vector<CrRow> cr_family_report(int n_max);

std::string cr_report_to_csv(const std::vector<CrRow>& rows);

}  // namespace tsym
