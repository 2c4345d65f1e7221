#include "tsym/classical.hpp"

#include <random>

namespace tsym {

void ClassicalExperiment::validate() const {
  if (dim_in < 1 || dim_out < 1 || nx < 1 || na < 1 || ny < 1 || nb < 1) {
    throw DimensionError("ClassicalExperiment: empty component");
  }
  if (static_cast<int>(prep.size()) != nx ||
      static_cast<int>(chan.size()) != dim_out ||
      static_cast<int>(meas.size()) != ny) {
    throw DimensionError("ClassicalExperiment: table shape mismatch");
  }
  for (const auto& row : prep) {
    if (static_cast<int>(row.size()) != na) {
      throw DimensionError("ClassicalExperiment: preparation shape");
    }
    for (const auto& dist : row) {
      if (static_cast<int>(dist.size()) != dim_in) {
        throw DimensionError("ClassicalExperiment: preparation shape");
      }
      for (const Rat& p : dist) {
        if (p < 0) throw NumericalError("ClassicalExperiment: negative entry");
      }
    }
  }
  for (int x = 0; x < nx; ++x) {
    Rat total = 0;
    for (int a = 0; a < na; ++a)
      for (int j = 0; j < dim_in; ++j) total += prep[x][a][j];
    if (total != 1) {
      throw NumericalError("ClassicalExperiment: preparation not normalized");
    }
  }
  for (int j = 0; j < dim_in; ++j) {
    Rat col = 0;
    for (int k = 0; k < dim_out; ++k) {
      if (static_cast<int>(chan[k].size()) != dim_in) {
        throw DimensionError("ClassicalExperiment: channel shape");
      }
      if (chan[k][j] < 0) {
        throw NumericalError("ClassicalExperiment: negative entry");
      }
      col += chan[k][j];
    }
    if (col != 1) {
      throw NumericalError("ClassicalExperiment: channel column not stochastic");
    }
  }
  for (int y = 0; y < ny; ++y) {
    if (static_cast<int>(meas[y].size()) != nb) {
      throw DimensionError("ClassicalExperiment: measurement shape");
    }
    for (int k = 0; k < dim_out; ++k) {
      Rat total = 0;
      for (int b = 0; b < nb; ++b) {
        if (static_cast<int>(meas[y][b].size()) != dim_out) {
          throw DimensionError("ClassicalExperiment: measurement shape");
        }
        if (meas[y][b][k] < 0) {
          throw NumericalError("ClassicalExperiment: negative entry");
        }
        total += meas[y][b][k];
      }
      if (total != 1) {
        throw NumericalError(
            "ClassicalExperiment: response table not normalized");
      }
    }
  }
  // No-signalling: the input marginal must not depend on x.
  for (int x = 1; x < nx; ++x) {
    for (int j = 0; j < dim_in; ++j) {
      Rat m0 = 0, mx = 0;
      for (int a = 0; a < na; ++a) {
        m0 += prep[0][a][j];
        mx += prep[x][a][j];
      }
      if (m0 != mx) {
        throw NumericalError(
            "ClassicalExperiment: input marginal depends on x");
      }
    }
  }
}

std::vector<Rat> ClassicalExperiment::input_marginal() const {
  std::vector<Rat> p(dim_in, Rat(0));
  for (int a = 0; a < na; ++a)
    for (int j = 0; j < dim_in; ++j) p[j] += prep[0][a][j];
  return p;
}

std::vector<Rat> ClassicalExperiment::output_marginal() const {
  const std::vector<Rat> in = input_marginal();
  std::vector<Rat> p(dim_out, Rat(0));
  for (int k = 0; k < dim_out; ++k)
    for (int j = 0; j < dim_in; ++j) p[k] += chan[k][j] * in[j];
  return p;
}

std::vector<Rat> classical_behavior(const ClassicalExperiment& c) {
  c.validate();
  std::vector<Rat> table(
      static_cast<std::size_t>(c.nx) * c.na * c.ny * c.nb, Rat(0));
  for (int x = 0; x < c.nx; ++x)
    for (int a = 0; a < c.na; ++a)
      for (int y = 0; y < c.ny; ++y)
        for (int b = 0; b < c.nb; ++b) {
          Rat p = 0;
          for (int j = 0; j < c.dim_in; ++j)
            for (int k = 0; k < c.dim_out; ++k)
              p += c.prep[x][a][j] * c.chan[k][j] * c.meas[y][b][k];
          table[((x * c.na + a) * c.ny + y) * c.nb + b] = p;
        }
  return table;
}

ClassicalExperiment classical_time_reverse(const ClassicalExperiment& c) {
  c.validate();
  const std::vector<Rat> pj = c.input_marginal();
  const std::vector<Rat> pk = c.output_marginal();
  ClassicalExperiment r;
  r.dim_in = c.dim_out;
  r.dim_out = c.dim_in;
  r.nx = c.ny;
  r.na = c.nb;
  r.ny = c.nx;
  r.nb = c.na;
  // Reverse preparation p'(b, k | y) = p(b|y,k) p(k).
  r.prep.assign(r.nx, std::vector<std::vector<Rat>>(
                          r.na, std::vector<Rat>(r.dim_in, Rat(0))));
  for (int y = 0; y < c.ny; ++y)
    for (int b = 0; b < c.nb; ++b)
      for (int k = 0; k < c.dim_out; ++k)
        r.prep[y][b][k] = c.meas[y][b][k] * pk[k];
  // Reverse channel p'(j|k) = p(k|j) p(j) / p(k); off the support of p(k)
  // the channel resets to p(j), keeping the columns stochastic.
  r.chan.assign(r.dim_out, std::vector<Rat>(r.dim_in, Rat(0)));
  for (int k = 0; k < c.dim_out; ++k)
    for (int j = 0; j < c.dim_in; ++j)
      r.chan[j][k] = pk[k] > 0 ? Rat(c.chan[k][j] * pj[j] / pk[k]) : pj[j];
  // Reverse effects p'(a | x, j) = p(a, j | x) / p(j); zero-probability j
  // rows get a flat response.
  r.meas.assign(r.ny, std::vector<std::vector<Rat>>(
                          r.nb, std::vector<Rat>(r.dim_out, Rat(0))));
  for (int x = 0; x < c.nx; ++x)
    for (int a = 0; a < c.na; ++a)
      for (int j = 0; j < c.dim_in; ++j)
        r.meas[x][a][j] =
            pj[j] > 0 ? Rat(c.prep[x][a][j] / pj[j]) : Rat(1, c.na);
  r.validate();
  return r;
}

ClassicalExperiment classical_bayes_oracle(const ClassicalExperiment& c) {
  c.validate();
  // Joint distribution p(a, j, k, b | x, y), materialized entry by entry.
  const auto joint = [&](int x, int y, int a, int j, int k, int b) {
    return c.prep[x][a][j] * c.chan[k][j] * c.meas[y][b][k];
  };
  ClassicalExperiment r;
  r.dim_in = c.dim_out;
  r.dim_out = c.dim_in;
  r.nx = c.ny;
  r.na = c.nb;
  r.ny = c.nx;
  r.nb = c.na;
  r.prep.assign(r.nx, std::vector<std::vector<Rat>>(
                          r.na, std::vector<Rat>(r.dim_in, Rat(0))));
  r.chan.assign(r.dim_out, std::vector<Rat>(r.dim_in, Rat(0)));
  r.meas.assign(r.ny, std::vector<std::vector<Rat>>(
                          r.nb, std::vector<Rat>(r.dim_out, Rat(0))));
  // p'(b, k | y) = sum_{a, j} p(a, j, k, b | x, y), any x.
  for (int y = 0; y < c.ny; ++y)
    for (int b = 0; b < c.nb; ++b)
      for (int k = 0; k < c.dim_out; ++k) {
        Rat s = 0;
        for (int a = 0; a < c.na; ++a)
          for (int j = 0; j < c.dim_in; ++j) s += joint(0, y, a, j, k, b);
        r.prep[y][b][k] = s;
      }
  // p'(j | k) = p(j, k) / p(k), conditioning the joint directly.
  for (int k = 0; k < c.dim_out; ++k) {
    Rat pk = 0;
    std::vector<Rat> pjk(c.dim_in, Rat(0));
    for (int j = 0; j < c.dim_in; ++j) {
      for (int a = 0; a < c.na; ++a)
        for (int b = 0; b < c.nb; ++b) pjk[j] += joint(0, 0, a, j, k, b);
      pk += pjk[j];
    }
    for (int j = 0; j < c.dim_in; ++j) {
      Rat pj = 0;
      for (int a = 0; a < c.na; ++a)
        for (int kk = 0; kk < c.dim_out; ++kk)
          for (int b = 0; b < c.nb; ++b) pj += joint(0, 0, a, j, kk, b);
      r.chan[j][k] = pk > 0 ? Rat(pjk[j] / pk) : pj;
    }
  }
  // p'(a | x, j) = p(a, j | x) / p(j).
  for (int x = 0; x < c.nx; ++x)
    for (int a = 0; a < c.na; ++a)
      for (int j = 0; j < c.dim_in; ++j) {
        Rat pj = 0, paj = 0;
        for (int aa = 0; aa < c.na; ++aa)
          for (int k = 0; k < c.dim_out; ++k)
            for (int b = 0; b < c.nb; ++b) {
              const Rat v = joint(x, 0, aa, j, k, b);
              pj += v;
              if (aa == a) paj += v;
            }
        r.meas[x][a][j] = pj > 0 ? Rat(paj / pj) : Rat(1, c.na);
      }
  r.validate();
  return r;
}

bool classical_equal(const ClassicalExperiment& lhs,
                     const ClassicalExperiment& rhs) {
  return lhs.dim_in == rhs.dim_in && lhs.dim_out == rhs.dim_out &&
         lhs.nx == rhs.nx && lhs.na == rhs.na && lhs.ny == rhs.ny &&
         lhs.nb == rhs.nb && lhs.prep == rhs.prep && lhs.chan == rhs.chan &&
         lhs.meas == rhs.meas;
}

Experiment to_quantum(const ClassicalExperiment& c) {
  c.validate();
  Experiment e;
  e.preparation.dim = c.dim_in;
  e.preparation.inputs = default_labels(c.nx);
  e.preparation.outputs = default_labels(c.na);
  e.preparation.states.resize(static_cast<std::size_t>(c.nx) * c.na);
  for (int x = 0; x < c.nx; ++x)
    for (int a = 0; a < c.na; ++a) {
      Mat rho = Mat::Zero(c.dim_in, c.dim_in);
      for (int j = 0; j < c.dim_in; ++j) {
        rho(j, j) = c.prep[x][a][j].convert_to<double>();
      }
      e.preparation.states[x * c.na + a] = rho;
    }
  Mat choi = Mat::Zero(c.dim_in * c.dim_out, c.dim_in * c.dim_out);
  for (int j = 0; j < c.dim_in; ++j)
    for (int k = 0; k < c.dim_out; ++k) {
      choi(j * c.dim_out + k, j * c.dim_out + k) =
          c.chan[k][j].convert_to<double>();
    }
  e.channel.dim_in = c.dim_in;
  e.channel.dim_out = c.dim_out;
  e.channel.choi = choi;
  e.measurement.dim = c.dim_out;
  e.measurement.inputs = default_labels(c.ny);
  e.measurement.outputs = default_labels(c.nb);
  e.measurement.effects.resize(static_cast<std::size_t>(c.ny) * c.nb);
  for (int y = 0; y < c.ny; ++y)
    for (int b = 0; b < c.nb; ++b) {
      Mat eff = Mat::Zero(c.dim_out, c.dim_out);
      for (int k = 0; k < c.dim_out; ++k) {
        eff(k, k) = c.meas[y][b][k].convert_to<double>();
      }
      e.measurement.effects[y * c.nb + b] = eff;
    }
  e.validate();
  return e;
}

namespace {

std::vector<Rat> positive_distribution(int n, Rng& rng) {
  std::uniform_int_distribution<int> pick(1, 8);
  std::vector<int> raw(n);
  int total = 0;
  for (int& v : raw) total += (v = pick(rng));
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) out[i] = Rat(raw[i], total);
  return out;
}

}  // namespace

ClassicalExperiment random_classical_experiment(int dim_in, int dim_out,
                                                int nx, int na, int ny,
                                                int nb, Rng& rng) {
  ClassicalExperiment c;
  c.dim_in = dim_in;
  c.dim_out = dim_out;
  c.nx = nx;
  c.na = na;
  c.ny = ny;
  c.nb = nb;
  // p(a, j | x) = p(a | x, j) p(j) keeps the input marginal x-independent.
  const std::vector<Rat> pj = positive_distribution(dim_in, rng);
  c.prep.assign(nx, std::vector<std::vector<Rat>>(
                        na, std::vector<Rat>(dim_in, Rat(0))));
  for (int x = 0; x < nx; ++x)
    for (int j = 0; j < dim_in; ++j) {
      const std::vector<Rat> resp = positive_distribution(na, rng);
      for (int a = 0; a < na; ++a) c.prep[x][a][j] = resp[a] * pj[j];
    }
  c.chan.assign(dim_out, std::vector<Rat>(dim_in, Rat(0)));
  for (int j = 0; j < dim_in; ++j) {
    const std::vector<Rat> col = positive_distribution(dim_out, rng);
    for (int k = 0; k < dim_out; ++k) c.chan[k][j] = col[k];
  }
  c.meas.assign(ny, std::vector<std::vector<Rat>>(
                        nb, std::vector<Rat>(dim_out, Rat(0))));
  for (int y = 0; y < ny; ++y)
    for (int k = 0; k < dim_out; ++k) {
      const std::vector<Rat> resp = positive_distribution(nb, rng);
      for (int b = 0; b < nb; ++b) c.meas[y][b][k] = resp[b];
    }
  c.validate();
  return c;
}

}  // namespace tsym
