#include "tsym/onticlab.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tsym {

namespace {

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

double to_double(const Rat& r) { return r.convert_to<double>(); }

std::string tuple_str(const OnticExtension& ext, int x, int y, int a, int b,
                      int l) {
  std::ostringstream out;
  out << "(x=" << (x >= 0 ? ext.X[x] : "*") << ", y=" << (y >= 0 ? ext.Y[y] : "*")
      << ", a=" << (a >= 0 ? ext.A[a] : "*") << ", b=" << (b >= 0 ? ext.B[b] : "*")
      << ", lambda=" << (l >= 0 ? ext.lambda[l] : "*") << ")";
  return out.str();
}

// Accumulates the worst deviation with its witness.
struct Worst {
  Rat value = 0;
  std::string witness;

  void update(const Rat& v, std::string w) {
    if (v > value) {
      value = v;
      witness = std::move(w);
    }
  }
};

CheckReport finish(std::string condition, const Worst& worst, int skipped) {
  CheckReport r;
  r.condition = std::move(condition);
  r.worst_violation = to_double(worst.value);
  r.holds = r.worst_violation <= Tolerances{}.prob;
  r.witness = worst.witness;
  r.skipped = skipped;
  return r;
}

}  // namespace

const Rat& OnticExtension::at(int x, int y, int a, int b, int l) const {
  return joint[(((x * Y.size() + y) * A.size() + a) * B.size() + b) *
                   lambda.size() +
               l];
}

Rat& OnticExtension::at(int x, int y, int a, int b, int l) {
  return joint[(((x * Y.size() + y) * A.size() + a) * B.size() + b) *
                   lambda.size() +
               l];
}

void OnticExtension::validate(const Tolerances& tol) const {
  if (X.empty() || Y.empty() || A.empty() || B.empty() || lambda.empty()) {
    throw DimensionError("OnticExtension: empty alphabet");
  }
  if (joint.size() != size()) {
    throw DimensionError("OnticExtension: joint table size mismatch");
  }
  for (const Rat& p : joint) {
    if (p < 0) throw NumericalError("OnticExtension: negative probability");
  }
  for (std::size_t x = 0; x < X.size(); ++x) {
    for (std::size_t y = 0; y < Y.size(); ++y) {
      Rat sum = 0;
      for (std::size_t a = 0; a < A.size(); ++a)
        for (std::size_t b = 0; b < B.size(); ++b)
          for (std::size_t l = 0; l < lambda.size(); ++l)
            sum += at(x, y, a, b, l);
      if (to_double(rat_abs(sum - 1)) > tol.prob) {
        throw NumericalError("OnticExtension: setting (" + X[x] + "," + Y[y] +
                             ") is not normalized");
      }
    }
  }
}

std::string CheckReport::to_string() const {
  std::ostringstream out;
  out << condition << ": " << (holds ? "HOLDS" : "FAILS")
      << " worst_violation=" << worst_violation;
  if (!holds && !witness.empty()) out << " witness=" << witness;
  if (skipped > 0) out << " skipped_zero_probability_cells=" << skipped;
  return out.str();
}

std::vector<Rat> marginalize_exact(const OnticExtension& ext) {
  ext.validate();
  std::vector<Rat> table(ext.X.size() * ext.A.size() * ext.Y.size() *
                         ext.B.size());
  for (std::size_t x = 0; x < ext.X.size(); ++x)
    for (std::size_t a = 0; a < ext.A.size(); ++a)
      for (std::size_t y = 0; y < ext.Y.size(); ++y)
        for (std::size_t b = 0; b < ext.B.size(); ++b) {
          Rat sum = 0;
          for (std::size_t l = 0; l < ext.lambda.size(); ++l)
            sum += ext.at(x, y, a, b, l);
          table[((x * ext.A.size() + a) * ext.Y.size() + y) * ext.B.size() +
                b] = sum;
        }
  return table;
}

BehaviorTable marginalize(const OnticExtension& ext) {
  const std::vector<Rat> exact = marginalize_exact(ext);
  BehaviorTable t;
  t.X = ext.X;
  t.A = ext.A;
  t.Y = ext.Y;
  t.B = ext.B;
  t.table.resize(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) t.table[i] = to_double(exact[i]);
  t.validate();
  return t;
}

namespace {

// p(a|x,y), p(a,lambda|x,y), p(lambda|x,y) -- raw exact marginals.
Rat p_a(const OnticExtension& e, int x, int y, int a) {
  Rat s = 0;
  for (std::size_t b = 0; b < e.B.size(); ++b)
    for (std::size_t l = 0; l < e.lambda.size(); ++l) s += e.at(x, y, a, b, l);
  return s;
}

Rat p_al(const OnticExtension& e, int x, int y, int a, int l) {
  Rat s = 0;
  for (std::size_t b = 0; b < e.B.size(); ++b) s += e.at(x, y, a, b, l);
  return s;
}

Rat p_bl(const OnticExtension& e, int x, int y, int b, int l) {
  Rat s = 0;
  for (std::size_t a = 0; a < e.A.size(); ++a) s += e.at(x, y, a, b, l);
  return s;
}

Rat p_l(const OnticExtension& e, int x, int y, int l) {
  Rat s = 0;
  for (std::size_t a = 0; a < e.A.size(); ++a)
    for (std::size_t b = 0; b < e.B.size(); ++b) s += e.at(x, y, a, b, l);
  return s;
}

}  // namespace

CheckReport check_no_retrocausality(const OnticExtension& ext) {
  ext.validate();
  Worst worst;
  int skipped = 0;
  const int nx = ext.X.size(), ny = ext.Y.size(), na = ext.A.size(),
            nl = ext.lambda.size();
  // p(a|x,y) = p(a|x): compare against the y=0 column.
  for (int x = 0; x < nx; ++x) {
    for (int a = 0; a < na; ++a) {
      const Rat ref = p_a(ext, x, 0, a);
      for (int y = 1; y < ny; ++y) {
        worst.update(rat_abs(p_a(ext, x, y, a) - ref),
                     tuple_str(ext, x, y, a, -1, -1) + " vs y=" + ext.Y[0]);
      }
    }
  }
  // p(lambda|a,x,y) = p(lambda|a,x): compare across y where defined.
  for (int x = 0; x < nx; ++x) {
    for (int a = 0; a < na; ++a) {
      for (int l = 0; l < nl; ++l) {
        bool have_ref = false;
        Rat ref = 0;
        for (int y = 0; y < ny; ++y) {
          const Rat denom = p_a(ext, x, y, a);
          if (denom == 0) {
            ++skipped;
            continue;
          }
          const Rat val = p_al(ext, x, y, a, l) / denom;
          if (!have_ref) {
            ref = val;
            have_ref = true;
          } else {
            worst.update(rat_abs(val - ref), tuple_str(ext, x, y, a, -1, l));
          }
        }
      }
    }
  }
  return finish("no_retrocausality", worst, skipped);
}

CheckReport check_lambda_mediation(const OnticExtension& ext, bool weak) {
  ext.validate();
  Worst worst;
  int skipped = 0;
  const int nx = ext.X.size(), ny = ext.Y.size(), na = ext.A.size(),
            nb = ext.B.size(), nl = ext.lambda.size();
  for (int y = 0; y < ny; ++y) {
    for (int b = 0; b < nb; ++b) {
      for (int l = 0; l < nl; ++l) {
        // Strong form: p(b|a,lambda,x,y) must be common across all (a,x);
        // weak form: common across a at fixed x.
        for (int x_group = 0; x_group < (weak ? nx : 1); ++x_group) {
          bool have_ref = false;
          Rat ref = 0;
          for (int x = weak ? x_group : 0; x < (weak ? x_group + 1 : nx);
               ++x) {
            for (int a = 0; a < na; ++a) {
              const Rat denom = p_al(ext, x, y, a, l);
              if (denom == 0) {
                ++skipped;
                continue;
              }
              const Rat val = ext.at(x, y, a, b, l) / denom;
              if (!have_ref) {
                ref = val;
                have_ref = true;
              } else {
                worst.update(rat_abs(val - ref), tuple_str(ext, x, y, a, b, l));
              }
            }
          }
        }
      }
    }
  }
  return finish(weak ? "lambda_mediation_weak" : "lambda_mediation", worst,
                skipped);
}

CheckReport check_local_causality(const OnticExtension& ext) {
  ext.validate();
  Worst worst;
  int skipped = 0;
  const int nx = ext.X.size(), ny = ext.Y.size(), na = ext.A.size(),
            nb = ext.B.size(), nl = ext.lambda.size();
  for (int l = 0; l < nl; ++l) {
    const Rat pl_ref = p_l(ext, 0, 0, l);
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) {
        const Rat pl = p_l(ext, x, y, l);
        worst.update(rat_abs(pl - pl_ref), tuple_str(ext, x, y, -1, -1, l));
        if (pl == 0) {
          ++skipped;
          continue;
        }
        // Setting-independence of the response marginals.
        for (int a = 0; a < na; ++a) {
          const Rat val = p_al(ext, x, y, a, l) / pl;
          const Rat ref_pl = p_l(ext, x, 0, l);
          if (ref_pl > 0) {
            worst.update(rat_abs(val - p_al(ext, x, 0, a, l) / ref_pl),
                         tuple_str(ext, x, y, a, -1, l));
          }
        }
        for (int b = 0; b < nb; ++b) {
          const Rat val = p_bl(ext, x, y, b, l) / pl;
          const Rat ref_pl = p_l(ext, 0, y, l);
          if (ref_pl > 0) {
            worst.update(rat_abs(val - p_bl(ext, 0, y, b, l) / ref_pl),
                         tuple_str(ext, x, y, -1, b, l));
          }
        }
        // Conditional independence of a and b given lambda.
        for (int a = 0; a < na; ++a) {
          for (int b = 0; b < nb; ++b) {
            const Rat product =
                (p_al(ext, x, y, a, l) / pl) * (p_bl(ext, x, y, b, l) / pl);
            worst.update(rat_abs(ext.at(x, y, a, b, l) / pl - product),
                         tuple_str(ext, x, y, a, b, l));
          }
        }
      }
    }
  }
  return finish("local_causality", worst, skipped);
}

IndependenceReports check_independences(const OnticExtension& ext) {
  ext.validate();
  const int nx = ext.X.size(), ny = ext.Y.size(), na = ext.A.size(),
            nb = ext.B.size(), nl = ext.lambda.size();
  IndependenceReports out;
  {
    Worst worst;
    for (int l = 0; l < nl; ++l) {
      const Rat ref = p_l(ext, 0, 0, l);
      for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
          worst.update(rat_abs(p_l(ext, x, y, l) - ref),
                       tuple_str(ext, x, y, -1, -1, l));
    }
    out.measurement_independence = finish("measurement_independence", worst, 0);
  }
  {
    Worst worst;
    int skipped = 0;
    // p(b|lambda,x,y) independent of x.
    for (int y = 0; y < ny; ++y) {
      for (int b = 0; b < nb; ++b) {
        for (int l = 0; l < nl; ++l) {
          bool have_ref = false;
          Rat ref = 0;
          for (int x = 0; x < nx; ++x) {
            const Rat pl = p_l(ext, x, y, l);
            if (pl == 0) {
              ++skipped;
              continue;
            }
            const Rat val = p_bl(ext, x, y, b, l) / pl;
            if (!have_ref) {
              ref = val;
              have_ref = true;
            } else {
              worst.update(rat_abs(val - ref), tuple_str(ext, x, y, -1, b, l));
            }
          }
        }
      }
    }
    // p(a|lambda,x,y) independent of y.
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < na; ++a) {
        for (int l = 0; l < nl; ++l) {
          bool have_ref = false;
          Rat ref = 0;
          for (int y = 0; y < ny; ++y) {
            const Rat pl = p_l(ext, x, y, l);
            if (pl == 0) {
              ++skipped;
              continue;
            }
            const Rat val = p_al(ext, x, y, a, l) / pl;
            if (!have_ref) {
              ref = val;
              have_ref = true;
            } else {
              worst.update(rat_abs(val - ref), tuple_str(ext, x, y, a, -1, l));
            }
          }
        }
      }
    }
    out.parameter_independence = finish("parameter_independence", worst,
                                        skipped);
  }
  {
    Worst worst;
    int skipped = 0;
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) {
        for (int l = 0; l < nl; ++l) {
          const Rat pl = p_l(ext, x, y, l);
          for (int b = 0; b < nb; ++b) {
            const Rat marginal = pl > 0 ? Rat(p_bl(ext, x, y, b, l) / pl) : Rat(0);
            for (int a = 0; a < na; ++a) {
              const Rat denom = p_al(ext, x, y, a, l);
              if (denom == 0) {
                ++skipped;
                continue;
              }
              worst.update(rat_abs(ext.at(x, y, a, b, l) / denom - marginal),
                           tuple_str(ext, x, y, a, b, l));
            }
          }
        }
      }
    }
    out.outcome_independence = finish("outcome_independence", worst, skipped);
  }
  return out;
}

OnticExtension build_toy_model_extension() {
  OnticExtension ext;
  ext.X = ext.A = ext.Y = ext.B = default_labels(2);
  ext.lambda = {"00", "01", "10", "11"};  // (lambda0, lambda1)
  ext.joint.assign(ext.size(), Rat(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int l0 = 0; l0 < 2; ++l0)
        for (int l1 = 0; l1 < 2; ++l1) {
          const int a = (x == 0) ? l0 : l1;
          const int b = (y == 0) ? l0 : l1;
          ext.at(x, y, a, b, l0 * 2 + l1) = Rat(1, 4);
        }
  return ext;
}

namespace {

std::vector<int> support_of_epistemic_state(const OnticExtension& ext, int x,
                                            int a) {
  // supp p(lambda|a,x), computed on the y=0 slice (y-independence is the
  // caller's concern, not the support's).
  std::vector<int> support;
  for (std::size_t l = 0; l < ext.lambda.size(); ++l) {
    if (p_al(ext, x, 0, a, l) > 0) support.push_back(static_cast<int>(l));
  }
  return support;
}

}  // namespace

PsiClassification check_psi_ontic(const OnticExtension& ext,
                                  const std::vector<int>& state_ids) {
  ext.validate();
  const int nx = ext.X.size(), na = ext.A.size();
  if (state_ids.size() != static_cast<std::size_t>(nx) * na) {
    throw DimensionError("check_psi_ontic: state_ids size mismatch");
  }
  std::vector<std::vector<int>> supports(nx * na);
  std::vector<bool> defined(nx * na, false);
  for (int x = 0; x < nx; ++x) {
    for (int a = 0; a < na; ++a) {
      if (p_a(ext, x, 0, a) > 0) {
        supports[x * na + a] = support_of_epistemic_state(ext, x, a);
        defined[x * na + a] = true;
      }
    }
  }
  PsiClassification out;
  bool any_distinct_pair = false;
  for (int i = 0; i < nx * na; ++i) {
    if (!defined[i]) continue;
    for (int j = i + 1; j < nx * na; ++j) {
      if (!defined[j] || state_ids[i] == state_ids[j]) continue;
      any_distinct_pair = true;
      for (int l : supports[i]) {
        if (std::find(supports[j].begin(), supports[j].end(), l) !=
            supports[j].end()) {
          out.psi_ontic = false;
          std::ostringstream w;
          w << "(x=" << ext.X[i / na] << ",a=" << ext.A[i % na] << ") and (x="
            << ext.X[j / na] << ",a=" << ext.A[j % na]
            << ") share lambda=" << ext.lambda[l];
          out.witness = w.str();
          return out;
        }
      }
    }
  }
  out.psi_ontic = true;
  out.applicable = any_distinct_pair;
  if (!any_distinct_pair) out.witness = "no pair of distinct pure states";
  return out;
}

OnticExtension swap_roles(const OnticExtension& ext) {
  OnticExtension out;
  out.X = ext.Y;
  out.A = ext.B;
  out.Y = ext.X;
  out.B = ext.A;
  out.lambda = ext.lambda;
  out.joint.assign(out.size(), Rat(0));
  for (std::size_t x = 0; x < ext.X.size(); ++x)
    for (std::size_t y = 0; y < ext.Y.size(); ++y)
      for (std::size_t a = 0; a < ext.A.size(); ++a)
        for (std::size_t b = 0; b < ext.B.size(); ++b)
          for (std::size_t l = 0; l < ext.lambda.size(); ++l)
            out.at(y, x, b, a, l) = ext.at(x, y, a, b, l);
  return out;
}

std::optional<std::vector<int>> find_ontological_time_reverse(
    const OnticExtension& ext, const OnticExtension& ext2) {
  ext.validate();
  ext2.validate();
  if (ext2.X != ext.Y || ext2.A != ext.B || ext2.Y != ext.X ||
      ext2.B != ext.A) {
    throw DimensionError("find_ontological_time_reverse: alphabet mismatch");
  }
  const int nl = static_cast<int>(ext.lambda.size());
  if (ext2.lambda.size() != static_cast<std::size_t>(nl)) return std::nullopt;
  if (nl > 8) {
    throw DimensionError(
        "find_ontological_time_reverse: |Lambda| > 8 is not searchable");
  }
  std::vector<int> f(nl);
  std::iota(f.begin(), f.end(), 0);
  do {
    bool match = true;
    for (std::size_t x = 0; x < ext.X.size() && match; ++x)
      for (std::size_t y = 0; y < ext.Y.size() && match; ++y)
        for (std::size_t a = 0; a < ext.A.size() && match; ++a)
          for (std::size_t b = 0; b < ext.B.size() && match; ++b)
            for (int l = 0; l < nl && match; ++l)
              if (ext2.at(y, x, b, a, f[l]) != ext.at(x, y, a, b, l))
                match = false;
    if (match) return f;
  } while (std::next_permutation(f.begin(), f.end()));
  return std::nullopt;
}

OnticExtension build_price_psi_ontic_extension() {
  OnticExtension ext;
  ext.X = ext.A = default_labels(2);
  ext.Y = ext.B = {"0"};
  ext.lambda = {"x0a0", "x0a1", "x1a0", "x1a1"};
  ext.joint.assign(ext.size(), Rat(0));
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) ext.at(x, 0, a, 0, x * 2 + a) = Rat(1, 2);
  return ext;
}

std::string PriceDemoReport::to_string(const Labels& lambda_labels) const {
  std::ostringstream out;
  if (!applicable) {
    out << "INAPPLICABLE: " << reason;
    return out.str();
  }
  for (std::size_t x = 0; x < support_by_x.size(); ++x) {
    out << "supp p(lambda|x=" << x << ") = {";
    for (std::size_t i = 0; i < support_by_x[x].size(); ++i) {
      if (i) out << ",";
      out << lambda_labels[support_by_x[x][i]];
    }
    out << "}\n";
  }
  out << "supports disjoint across x: " << (supports_disjoint ? "yes" : "no")
      << "\n";
  out << "reversed-table " << reversed_measurement_independence.to_string()
      << "\n";
  out << (contradiction ? "CONTRADICTION EXHIBITED" : "no contradiction");
  return out.str();
}

PriceDemoReport price_contradiction_demo(const OnticExtension& ext,
                                         const std::vector<int>& state_ids) {
  PriceDemoReport report;
  const PsiClassification cls = check_psi_ontic(ext, state_ids);
  if (!cls.psi_ontic) {
    report.applicable = false;
    report.reason = "extension is psi-epistemic (" + cls.witness + ")";
    return report;
  }
  if (!cls.applicable) {
    report.applicable = false;
    report.reason = "no distinct pure states declared";
    return report;
  }
  const int nx = ext.X.size(), na = ext.A.size(), nl = ext.lambda.size();
  report.support_by_x.resize(nx);
  for (int x = 0; x < nx; ++x) {
    for (int l = 0; l < nl; ++l) {
      Rat s = 0;
      for (int a = 0; a < na; ++a) s += p_al(ext, x, 0, a, l);
      if (s > 0) report.support_by_x[x].push_back(l);
    }
  }
  report.supports_disjoint = true;
  for (int x = 0; x < nx && report.supports_disjoint; ++x) {
    for (int x2 = x + 1; x2 < nx && report.supports_disjoint; ++x2) {
      for (int l : report.support_by_x[x]) {
        if (std::find(report.support_by_x[x2].begin(),
                      report.support_by_x[x2].end(),
                      l) != report.support_by_x[x2].end()) {
          report.supports_disjoint = false;
          break;
        }
      }
    }
  }
  // In the role-swapped table, x is the measurement input; No Retrocausality
  // would demand p(lambda|x) = p(lambda) there, which disjoint supports rule
  // out.
  const OnticExtension swapped = swap_roles(ext);
  report.reversed_measurement_independence =
      check_independences(swapped).measurement_independence;
  report.contradiction = report.supports_disjoint &&
                         !report.reversed_measurement_independence.holds;
  return report;
}

PriceDemoReport price_contradiction_demo() {
  return price_contradiction_demo(build_price_psi_ontic_extension(),
                                  {0, 1, 2, 3});
}

namespace {

// Random distribution with small exact rational entries.
std::vector<Rat> random_distribution(int n, Rng& rng) {
  std::uniform_int_distribution<int> pick(1, 8);
  std::vector<int> raw(n);
  int total = 0;
  for (int& v : raw) total += (v = pick(rng));
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) out[i] = Rat(raw[i], total);
  return out;
}

}  // namespace

OnticExtension random_ontological_model(int nx, int na, int ny, int nb,
                                        int n_lambda, Rng& rng) {
  OnticExtension ext;
  ext.X = default_labels(nx);
  ext.A = default_labels(na);
  ext.Y = default_labels(ny);
  ext.B = default_labels(nb);
  ext.lambda = default_labels(n_lambda);
  ext.joint.assign(ext.size(), Rat(0));
  std::vector<std::vector<Rat>> p_a_given_x, epistemic, response;
  for (int x = 0; x < nx; ++x) p_a_given_x.push_back(random_distribution(na, rng));
  for (int i = 0; i < nx * na; ++i) epistemic.push_back(random_distribution(n_lambda, rng));
  for (int i = 0; i < n_lambda * ny; ++i) response.push_back(random_distribution(nb, rng));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          for (int l = 0; l < n_lambda; ++l)
            ext.at(x, y, a, b, l) = response[l * ny + y][b] *
                                    epistemic[x * na + a][l] *
                                    p_a_given_x[x][a];
  return ext;
}

OnticExtension random_locally_causal_extension(int nx, int na, int ny, int nb,
                                               int n_lambda, Rng& rng) {
  OnticExtension ext;
  ext.X = default_labels(nx);
  ext.A = default_labels(na);
  ext.Y = default_labels(ny);
  ext.B = default_labels(nb);
  ext.lambda = default_labels(n_lambda);
  ext.joint.assign(ext.size(), Rat(0));
  const std::vector<Rat> p_lambda = random_distribution(n_lambda, rng);
  std::vector<std::vector<Rat>> resp_a, resp_b;
  for (int i = 0; i < nx * n_lambda; ++i) resp_a.push_back(random_distribution(na, rng));
  for (int i = 0; i < ny * n_lambda; ++i) resp_b.push_back(random_distribution(nb, rng));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          for (int l = 0; l < n_lambda; ++l)
            ext.at(x, y, a, b, l) = resp_a[x * n_lambda + l][a] *
                                    resp_b[y * n_lambda + l][b] * p_lambda[l];
  return ext;
}

}  // namespace tsym
