#include "tsym/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace tsym {

namespace {

// Phase-1 simplex with Bland's rule (entering: lowest column index with a
// negative reduced cost; leaving: lowest basic index among minimum ratios),
// so it terminates even on the degenerate bases these behaviors produce.
// Works for double (eps = pivot tolerance) and cpp_rational (eps = 0).
template <class T>
struct Phase1Result {
  T objective = T(0);       // min total artificial mass; 0 iff feasible
  std::vector<T> solution;  // size n
  std::vector<T> dual;      // size m; dual^T A_j <= 0 for all j at optimum
};

template <class T>
Phase1Result<T> phase1_simplex(int m, int n, const std::vector<T>& a_rowmajor,
                               const std::vector<T>& b, const T& eps) {
  const int cols = n + m;
  std::vector<std::vector<T>> tab(m, std::vector<T>(cols + 1, T(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = a_rowmajor[i * n + j];
    tab[i][n + i] = T(1);
    tab[i][cols] = b[i];
  }
  // Reduced costs for minimizing the artificial sum; cost[cols] = -objective.
  std::vector<T> cost(cols + 1, T(0));
  for (int j = 0; j <= cols; ++j) {
    T s(0);
    for (int i = 0; i < m; ++i) s += tab[i][j];
    cost[j] = ((j >= n && j < cols) ? T(1) : T(0)) - s;
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    for (int i = 0; i < m; ++i) {
      if (!(tab[i][enter] > eps)) continue;
      if (leave < 0) {
        leave = i;
        continue;
      }
      // Compare ratios by cross-multiplication (pivot columns positive).
      const T lhs = tab[i][cols] * tab[leave][enter];
      const T rhs = tab[leave][cols] * tab[i][enter];
      if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
    }
    if (leave < 0) break;  // cannot happen: phase 1 is bounded below by 0
    const T piv = tab[leave][enter];
    for (int j = 0; j <= cols; ++j) tab[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const T f = tab[i][enter];
      if (f == T(0)) continue;
      for (int j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    const T fc = cost[enter];
    if (fc != T(0)) {
      for (int j = 0; j <= cols; ++j) cost[j] -= fc * tab[leave][j];
    }
    basis[leave] = enter;
  }

  Phase1Result<T> res;
  res.objective = -cost[cols];
  res.solution.assign(n, T(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) res.solution[basis[i]] = tab[i][cols];
  }
  // Dual prices from the artificial columns: y_i = 1 - reduced_cost(art_i).
  res.dual.assign(m, T(0));
  for (int i = 0; i < m; ++i) res.dual[i] = T(1) - cost[n + i];
  return res;
}

int behavior_index(int x, int a, int y, int b, int na, int ny, int nb) {
  return ((x * na + a) * ny + y) * nb + b;
}

}  // namespace

std::vector<DeterministicStrategy> enumerate_strategies(int nx, int na,
                                                        int ny, int nb) {
  if (nx < 1 || na < 1 || ny < 1 || nb < 1) {
    throw DimensionError("enumerate_strategies: empty alphabet");
  }
  double count = 1.0;
  for (int i = 0; i < nx; ++i) count *= na;
  for (int i = 0; i < ny; ++i) count *= nb;
  if (count > 1e6) {
    throw DimensionError("enumerate_strategies: |A|^|X| * |B|^|Y| > 10^6");
  }
  std::vector<DeterministicStrategy> out;
  out.reserve(static_cast<std::size_t>(count));
  DeterministicStrategy s;
  s.f_a.assign(nx, 0);
  s.f_b.assign(ny, 0);
  while (true) {
    out.push_back(s);
    // Lexicographic increment over (f_a, f_b), last position fastest.
    int pos = ny - 1;
    while (pos >= 0 && s.f_b[pos] == nb - 1) s.f_b[pos--] = 0;
    if (pos >= 0) {
      ++s.f_b[pos];
      continue;
    }
    pos = nx - 1;
    while (pos >= 0 && s.f_a[pos] == na - 1) s.f_a[pos--] = 0;
    if (pos < 0) break;
    ++s.f_a[pos];
  }
  return out;
}

std::vector<double> strategy_behavior(const DeterministicStrategy& s, int nx,
                                      int na, int ny, int nb) {
  std::vector<double> p(static_cast<std::size_t>(nx) * na * ny * nb, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      p[behavior_index(x, s.f_a[x], y, s.f_b[y], na, ny, nb)] = 1.0;
  return p;
}

namespace {

LhvCertificate solve_exact(const std::vector<DeterministicStrategy>& strategies,
                           const BehaviorTable& t, int nx, int na, int ny,
                           int nb) {
  const int m = nx * na * ny * nb;
  const int n = static_cast<int>(strategies.size());
  std::vector<Rat> a(static_cast<std::size_t>(m) * n, Rat(0));
  for (int j = 0; j < n; ++j) {
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y)
        a[static_cast<std::size_t>(behavior_index(
              x, strategies[j].f_a[x], y, strategies[j].f_b[y], na, ny, nb)) *
              n +
          j] = Rat(1);
  }
  std::vector<Rat> b(m);
  for (int i = 0; i < m; ++i) b[i] = Rat(t.table[i]);  // doubles are dyadic

  const auto res = phase1_simplex<Rat>(m, n, a, b, Rat(0));
  LhvCertificate cert;
  cert.exactly_verified = true;
  if (res.objective == 0) {
    cert.feasible = true;
    cert.weights.resize(n);
    for (int j = 0; j < n; ++j) {
      cert.weights[j] = res.solution[j].convert_to<double>();
    }
  } else {
    cert.feasible = false;
    cert.functional.resize(m);
    Rat bound;
    bool first = true;
    for (int j = 0; j < n; ++j) {
      Rat v = 0;
      for (int i = 0; i < m; ++i) v += res.dual[i] * a[static_cast<std::size_t>(i) * n + j];
      if (first || v > bound) bound = v;
      first = false;
    }
    Rat achieved = 0;
    for (int i = 0; i < m; ++i) {
      cert.functional[i] = res.dual[i].convert_to<double>();
      achieved += res.dual[i] * b[i];
    }
    cert.bound = bound.convert_to<double>();
    cert.achieved = achieved.convert_to<double>();
  }
  return cert;
}

}  // namespace

LhvCertificate lhv_feasibility(const BehaviorTable& t) {
  t.validate();
  const int nx = static_cast<int>(t.X.size());
  const int na = static_cast<int>(t.A.size());
  const int ny = static_cast<int>(t.Y.size());
  const int nb = static_cast<int>(t.B.size());
  const auto strategies = enumerate_strategies(nx, na, ny, nb);
  const int m = nx * na * ny * nb;
  const int n = static_cast<int>(strategies.size());

  std::vector<double> a(static_cast<std::size_t>(m) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y)
        a[static_cast<std::size_t>(behavior_index(x, strategies[j].f_a[x], y,
                                                  strategies[j].f_b[y], na, ny,
                                                  nb)) *
              n +
          j] = 1.0;
  }
  const auto res = phase1_simplex<double>(m, n, a, t.table, 1e-11);

  if (res.objective <= kLpTolerance) {
    LhvCertificate cert;
    cert.feasible = true;
    cert.weights = res.solution;
    // Independent re-check: the mixture must reproduce the table.
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      double q = 0.0;
      for (int j = 0; j < n; ++j) {
        q += cert.weights[j] * a[static_cast<std::size_t>(i) * n + j];
      }
      worst = std::max(worst, std::abs(q - t.table[i]));
    }
    if (worst <= kLpTolerance) return cert;
  } else {
    LhvCertificate cert;
    cert.feasible = false;
    cert.functional.assign(res.dual.begin(), res.dual.end());
    // Independent re-check in exact arithmetic: the functional must strictly
    // separate the behavior from every strategy.
    Rat bound;
    bool first = true;
    for (int j = 0; j < n; ++j) {
      Rat v = 0;
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
          v += Rat(cert.functional[behavior_index(
              x, strategies[j].f_a[x], y, strategies[j].f_b[y], na, ny, nb)]);
      if (first || v > bound) bound = v;
      first = false;
    }
    Rat achieved = 0;
    for (int i = 0; i < m; ++i) {
      achieved += Rat(cert.functional[i]) * Rat(t.table[i]);
    }
    if (achieved > bound) {
      cert.bound = bound.convert_to<double>();
      cert.achieved = achieved.convert_to<double>();
      cert.exactly_verified = true;
      return cert;
    }
  }
  // The floating verdict could not be certified; decide exactly.
  return solve_exact(strategies, t, nx, na, ny, nb);
}

std::string certificate_to_text(const LhvCertificate& cert,
                                const BehaviorTable& t) {
  std::ostringstream out;
  out << std::setprecision(17);
  const int nx = static_cast<int>(t.X.size());
  const int na = static_cast<int>(t.A.size());
  const int ny = static_cast<int>(t.Y.size());
  const int nb = static_cast<int>(t.B.size());
  if (cert.feasible) {
    out << "verdict: FEASIBLE\n";
    const auto strategies = enumerate_strategies(nx, na, ny, nb);
    for (std::size_t j = 0; j < strategies.size(); ++j) {
      if (cert.weights[j] <= 0.0) continue;
      out << "weight " << cert.weights[j] << " strategy a(x)=";
      for (int v : strategies[j].f_a) out << t.A[v];
      out << " b(y)=";
      for (int v : strategies[j].f_b) out << t.B[v];
      out << "\n";
    }
  } else {
    out << "verdict: INFEASIBLE\n";
    out << "bell functional (x,a,y,b,coefficient):\n";
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < na; ++a)
        for (int y = 0; y < ny; ++y)
          for (int b = 0; b < nb; ++b) {
            const double c =
                cert.functional[behavior_index(x, a, y, b, na, ny, nb)];
            if (c != 0.0) {
              out << t.X[x] << "," << t.A[a] << "," << t.Y[y] << "," << t.B[b]
                  << "," << c << "\n";
            }
          }
    out << "deterministic bound: " << cert.bound << "\n";
    out << "achieved by behavior: " << cert.achieved << "\n";
  }
  out << "exactly_verified: " << (cert.exactly_verified ? "yes" : "no")
      << "\n";
  return out.str();
}

double chsh_facet_max(const BehaviorTable& t) {
  if (t.X.size() != 2 || t.A.size() != 2 || t.Y.size() != 2 ||
      t.B.size() != 2) {
    throw DimensionError("chsh_facet_max: binary alphabets required");
  }
  double corr[2][2];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double e = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          e += ((a ^ b) ? -1.0 : 1.0) * t.at(x, a, y, b);
      corr[x][y] = e;
    }
  double best = 0.0;
  for (int neg = 0; neg < 4; ++neg) {
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        s += ((x * 2 + y) == neg ? -1.0 : 1.0) * corr[x][y];
    best = std::max(best, std::abs(s));
  }
  return best;
}

std::string ChshReport::to_string() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "chsh value: " << value << "\n";
  out << "lhv: " << (certificate.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
  if (!certificate.feasible) {
    out << "separating functional bound " << certificate.bound
        << " achieved " << certificate.achieved << "\n";
  }
  out << "facet max (classical <= 2): " << facet_max
      << (facets_apply ? "" : " [not no-signalling; facet check skipped]")
      << "\n";
  out << "bipartite mapping deviation: " << isomorphism.max_deviation << "\n";
  out << "consistent: " << (consistent ? "yes" : "NO") << "\n";
  return out.str();
}

ChshReport chsh_violation_report(const Experiment& e) {
  const BehaviorTable t = born_predict(e);
  if (t.X.size() != 2 || t.A.size() != 2 || t.Y.size() != 2 ||
      t.B.size() != 2) {
    throw DimensionError("chsh_violation_report: binary alphabets required");
  }
  ChshReport report;
  report.value = chsh_value(t);
  report.certificate = lhv_feasibility(t);
  report.isomorphism = prediction_isomorphism_check(e);
  report.facet_max = chsh_facet_max(t);

  // Fine's theorem makes the eight CHSH facets decisive, but only for
  // behaviors that are no-signalling in both directions; the LP stays the
  // source of truth.
  const Tolerances tol;
  bool ns = true;
  for (int x = 0; x < 2 && ns; ++x)
    for (int a = 0; a < 2 && ns; ++a) {
      const double m0 = t.at(x, a, 0, 0) + t.at(x, a, 0, 1);
      const double m1 = t.at(x, a, 1, 0) + t.at(x, a, 1, 1);
      if (std::abs(m0 - m1) > tol.prob) ns = false;
    }
  for (int y = 0; y < 2 && ns; ++y)
    for (int b = 0; b < 2 && ns; ++b) {
      const double m0 = t.at(0, 0, y, b) + t.at(0, 1, y, b);
      const double m1 = t.at(1, 0, y, b) + t.at(1, 1, y, b);
      if (std::abs(m0 - m1) > tol.prob) ns = false;
    }
  report.facets_apply = ns;
  report.consistent = true;
  if (ns) {
    const bool facet_feasible = report.facet_max <= 2.0 + kLpTolerance;
    if (facet_feasible != report.certificate.feasible) {
      report.consistent = false;
    }
    if (report.value > 0.75 + kLpTolerance && report.certificate.feasible) {
      report.consistent = false;
    }
  }
  return report;
}

double chained_statistic(const std::vector<double>& table, int n) {
  const auto p = [&](int x, int y, int a, int b) {
    return table[behavior_index(x, a, y, b, 2, n, 2)];
  };
  const auto p_diff = [&](int x, int y) {
    return p(x, y, 0, 1) + p(x, y, 1, 0);
  };
  double c = 0.0;
  for (int k = 0; k < n; ++k) c += p_diff(k, k);
  for (int k = 0; k + 1 < n; ++k) c += p_diff(k + 1, k);
  c += 1.0 - p_diff(0, n - 1);  // closing pair is scored on correlation
  return c;
}

double chained_statistic(const BehaviorTable& t, int n) {
  if (static_cast<int>(t.X.size()) != n || t.A.size() != 2 ||
      static_cast<int>(t.Y.size()) != n || t.B.size() != 2) {
    throw DimensionError("chained_statistic: alphabet mismatch");
  }
  return chained_statistic(t.table, n);
}

std::vector<CrRow> cr_family_report(int n_max) {
  if (n_max < 1 || n_max > 12) {
    throw DimensionError("cr_family_report: N_max must be in 1..12");
  }
  const double pi = std::numbers::pi;
  std::vector<CrRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const Experiment e = build_cr_experiment(n);
    const BehaviorTable t = born_predict(e);
    CrRow row;
    row.n = n;
    for (int x = 0; x < n; ++x)
      for (int a = 0; a < 2; ++a) {
        double marginal = 0.0;
        for (int b = 0; b < 2; ++b) marginal += t.at(x, a, 0, b);
        row.marginal_deviation =
            std::max(row.marginal_deviation, std::abs(marginal - 0.5));
      }
    for (int y = 0; y < n; ++y)
      for (int b = 0; b < 2; ++b) {
        double marginal = 0.0;
        for (int a = 0; a < 2; ++a) marginal += t.at(0, a, y, b);
        row.marginal_deviation =
            std::max(row.marginal_deviation, std::abs(marginal - 0.5));
      }
    row.feasible = lhv_feasibility(t).feasible;
    row.chained = chained_statistic(t, n);
    const double s = std::sin(pi / (4.0 * n));
    row.chained_closed_form = 2.0 * n * s * s;
    // Classical floor of the statistic, brute-forced over all strategies.
    const auto strategies = enumerate_strategies(n, 2, n, 2);
    double best = -1.0;
    for (const auto& strat : strategies) {
      const double c = chained_statistic(strategy_behavior(strat, n, 2, n, 2), n);
      if (best < 0.0 || c < best) best = c;
    }
    row.classical_bound = best;
    // Per-pair agreement probabilities against the pure-state overlap
    // cos^2((beta - alpha) / 2).
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const double alpha = pi * x / n;
        const double beta = pi * (2 * y + 1) / (2 * n);
        const double overlap = std::cos((beta - alpha) / 2.0);
        const double same = t.at(x, 0, y, 0) + t.at(x, 1, y, 1);
        row.max_pair_deviation = std::max(
            row.max_pair_deviation, std::abs(same - overlap * overlap));
      }
    rows.push_back(row);
  }
  return rows;
}

std::string cr_report_to_csv(const std::vector<CrRow>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "N,marginal_deviation,lhv_feasible,chained,chained_closed_form,"
         "classical_bound,max_pair_deviation\n";
  for (const CrRow& r : rows) {
    out << r.n << "," << r.marginal_deviation << ","
        << (r.feasible ? 1 : 0) << "," << r.chained << ","
        << r.chained_closed_form << "," << r.classical_bound << ","
        << r.max_pair_deviation << "\n";
  }
  return out.str();
}

}  // namespace tsym
