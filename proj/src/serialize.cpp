#include "tsym/serialize.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace tsym {

using nlohmann::json;

namespace {

json matrix_to_value(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_value(const json& v, const std::string& who) {
  if (!v.is_array() || v.empty()) {
    throw ParseError(who + ": expected a nonempty matrix array");
  }
  const std::size_t n_rows = v.size();
  const std::size_t n_cols = v[0].size();
  Mat m(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!v[i].is_array() || v[i].size() != n_cols) {
      throw ParseError(who + ": ragged matrix rows");
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
      const json& cell = v[i][j];
      if (!cell.is_array() || cell.size() != 2) {
        throw ParseError(who + ": matrix entries must be [re, im] pairs");
      }
      m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

Labels labels_from_value(const json& v, const std::string& who) {
  if (!v.is_array() || v.empty()) {
    throw ParseError(who + ": expected a nonempty alphabet");
  }
  Labels out;
  for (const json& l : v) out.push_back(l.get<std::string>());
  return out;
}

}  // namespace

std::string matrix_to_json(const Mat& m) { return matrix_to_value(m).dump(); }

std::string experiment_to_json(const Experiment& e) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["preparation"] = {
      {"dim", e.preparation.dim},
      {"inputs", e.preparation.inputs},
      {"outputs", e.preparation.outputs},
  };
  json states = json::array();
  for (const Mat& s : e.preparation.states) states.push_back(matrix_to_value(s));
  doc["preparation"]["states"] = std::move(states);

  doc["channel"] = {
      {"dim_in", e.channel.dim_in},
      {"dim_out", e.channel.dim_out},
      {"choi", matrix_to_value(e.channel.choi)},
  };

  doc["measurement"] = {
      {"dim", e.measurement.dim},
      {"inputs", e.measurement.inputs},
      {"outputs", e.measurement.outputs},
  };
  json effects = json::array();
  for (const Mat& f : e.measurement.effects) effects.push_back(matrix_to_value(f));
  doc["measurement"]["effects"] = std::move(effects);
  return doc.dump(2);
}

Experiment experiment_from_json(const std::string& text,
                                const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("experiment document: ") + ex.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw ParseError("experiment document: unsupported schema version");
    }
    Experiment e;
    const json& p = doc.at("preparation");
    e.preparation.dim = p.at("dim").get<int>();
    e.preparation.inputs = labels_from_value(p.at("inputs"), "preparation");
    e.preparation.outputs = labels_from_value(p.at("outputs"), "preparation");
    for (const json& s : p.at("states")) {
      e.preparation.states.push_back(matrix_from_value(s, "preparation"));
    }
    const json& c = doc.at("channel");
    e.channel.dim_in = c.at("dim_in").get<int>();
    e.channel.dim_out = c.at("dim_out").get<int>();
    e.channel.choi = matrix_from_value(c.at("choi"), "channel");
    const json& m = doc.at("measurement");
    e.measurement.dim = m.at("dim").get<int>();
    e.measurement.inputs = labels_from_value(m.at("inputs"), "measurement");
    e.measurement.outputs = labels_from_value(m.at("outputs"), "measurement");
    for (const json& f : m.at("effects")) {
      e.measurement.effects.push_back(matrix_from_value(f, "measurement"));
    }
    e.validate(tol);
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("experiment document: ") + ex.what());
  }
}

void write_behavior_csv(std::ostream& out, const BehaviorTable& t) {
  out << "x,a,y,b,p\n";
  out << std::setprecision(17);
  for (std::size_t x = 0; x < t.X.size(); ++x)
    for (std::size_t a = 0; a < t.A.size(); ++a)
      for (std::size_t y = 0; y < t.Y.size(); ++y)
        for (std::size_t b = 0; b < t.B.size(); ++b)
          out << t.X[x] << ',' << t.A[a] << ',' << t.Y[y] << ',' << t.B[b]
              << ',' << t.at(x, a, y, b) << '\n';
}

std::string behavior_to_csv(const BehaviorTable& t) {
  std::ostringstream out;
  write_behavior_csv(out, t);
  return out.str();
}

namespace {

int label_index(Labels& labels, const std::string& l) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == l) return static_cast<int>(i);
  }
  labels.push_back(l);
  return static_cast<int>(labels.size()) - 1;
}

}  // namespace

BehaviorTable behavior_from_csv(std::istream& in, const Tolerances& tol) {
  std::string line;
  if (!std::getline(in, line) || line.find("x,a,y,b,p") != 0) {
    throw ParseError("behavior CSV: missing x,a,y,b,p header");
  }
  struct Row {
    int x, a, y, b;
    double p;
  };
  std::vector<Row> rows;
  BehaviorTable t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string fx, fa, fy, fb, fp;
    if (!std::getline(ls, fx, ',') || !std::getline(ls, fa, ',') ||
        !std::getline(ls, fy, ',') || !std::getline(ls, fb, ',') ||
        !std::getline(ls, fp)) {
      throw ParseError("behavior CSV: malformed row: " + line);
    }
    Row r;
    r.x = label_index(t.X, fx);
    r.a = label_index(t.A, fa);
    r.y = label_index(t.Y, fy);
    r.b = label_index(t.B, fb);
    try {
      r.p = std::stod(fp);
    } catch (const std::exception&) {
      throw ParseError("behavior CSV: bad probability: " + fp);
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError("behavior CSV: no data rows");
  t.table.assign(t.size(), 0.0);
  std::vector<bool> seen(t.size(), false);
  for (const Row& r : rows) {
    t.at(r.x, r.a, r.y, r.b) = r.p;
    seen[((r.x * t.A.size() + r.a) * t.Y.size() + r.y) * t.B.size() + r.b] =
        true;
  }
  for (bool s : seen) {
    if (!s) throw ParseError("behavior CSV: incomplete table");
  }
  t.validate(tol);
  return t;
}

Experiment load_experiment(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return experiment_from_json(buf.str(), tol);
}

void save_experiment(const std::string& path, const Experiment& e) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << experiment_to_json(e) << '\n';
}

BehaviorTable load_behavior(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return behavior_from_csv(in, tol);
}

void save_behavior(const std::string& path, const BehaviorTable& t) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_behavior_csv(out, t);
}

namespace {

std::string rat_to_string(const Rat& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

Rat rat_from_value(const json& v) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (!v.is_string()) {
    throw ParseError("ontic extension: probabilities must be integers or "
                     "\"p/q\" strings");
  }
  const std::string s = v.get<std::string>();
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw ParseError("ontic extension: bad rational: " + s);
  }
}

}  // namespace

std::string ontic_to_json(const OnticExtension& ext) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "ontic_extension";
  doc["x"] = ext.X;
  doc["a"] = ext.A;
  doc["y"] = ext.Y;
  doc["b"] = ext.B;
  doc["lambda"] = ext.lambda;
  json table = json::array();
  for (const Rat& p : ext.joint) table.push_back(rat_to_string(p));
  doc["joint"] = std::move(table);
  return doc.dump(2);
}

OnticExtension ontic_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& ex) {
    throw ParseError(std::string("ontic extension: bad JSON: ") + ex.what());
  }
  if (doc.value("kind", "") != "ontic_extension") {
    throw ParseError("ontic extension: kind must be \"ontic_extension\"");
  }
  OnticExtension ext;
  ext.X = labels_from_value(doc.at("x"), "ontic extension");
  ext.A = labels_from_value(doc.at("a"), "ontic extension");
  ext.Y = labels_from_value(doc.at("y"), "ontic extension");
  ext.B = labels_from_value(doc.at("b"), "ontic extension");
  ext.lambda = labels_from_value(doc.at("lambda"), "ontic extension");
  const json& table = doc.at("joint");
  if (!table.is_array() || table.size() != ext.size()) {
    throw ParseError("ontic extension: joint table size mismatch");
  }
  for (const json& v : table) ext.joint.push_back(rat_from_value(v));
  ext.validate();
  return ext;
}

OnticExtension load_ontic(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ontic_from_json(buf.str());
}

void save_ontic(const std::string& path, const OnticExtension& ext) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << ontic_to_json(ext) << '\n';
}

}  // namespace tsym
