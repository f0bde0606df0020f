#include "liereach/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liereach/errors.hpp"

#ifndef LIEREACH_VERSION
#define LIEREACH_VERSION "dev"
#endif

namespace liereach::io {

const char* tool_version() { return LIEREACH_VERSION; }

namespace {

void dump_value(const Json& j, std::string& out, int indent);

bool is_flat(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void dump_scalar(const Json& j, std::string& out) {
  if (j.is_number_float()) {
    // Negative zero prints as 0 so equal values serialize identically.
    const double v = j.get<double>() + 0.0;
    if (!std::isfinite(v)) throw Error("cannot serialize a non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  } else {
    out += j.dump();
  }
}

void dump_value(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump_value(it.value(), out, indent + 2);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    if (is_flat(j)) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        dump_scalar(j[i], out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      dump_value(j[i], out, indent + 2);
    }
    out += "\n" + close + "]";
  } else {
    dump_scalar(j, out);
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw InputError(join(path, key), "missing required key");
  return obj.at(key);
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(path, "non-finite number");
  return v;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<int>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

Complex as_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return {as_double(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError(path, "expected [re, im]");
  return {as_double(j[0], index(path, 0)), as_double(j[1], index(path, 1))};
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ComplexMatrix parse_matrix(const Json& j, int dim, const std::string& path) {
  as_array(j, path);
  if (static_cast<int>(j.size()) != dim) throw InputError(path, "expected " + std::to_string(dim) + " rows");
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const std::string rp = index(path, static_cast<std::size_t>(r));
    const Json& row = as_array(j[static_cast<std::size_t>(r)], rp);
    if (static_cast<int>(row.size()) != dim)
      throw InputError(rp, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = as_complex(row[static_cast<std::size_t>(c)], index(rp, static_cast<std::size_t>(c)));
  }
  return m;
}

ExpPoly parse_coeff(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  const Complex c = as_complex(require(j, "c", path), join(path, "c"));
  const int p = j.contains("p") ? as_int(j.at("p"), join(path, "p")) : 0;
  const Complex rate = j.contains("rate") ? as_complex(j.at("rate"), join(path, "rate")) : Complex{};
  std::vector<int> formal;
  if (j.contains("formal")) {
    const std::string fp = join(path, "formal");
    const Json& f = as_array(j.at("formal"), fp);
    for (std::size_t i = 0; i < f.size(); ++i) formal.push_back(as_int(f[i], index(fp, i)));
  }
  try {
    return ExpPoly::term(c, p, rate, std::move(formal));
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
}

TDOperator parse_operator(const Json& j, const SystemSpec& sys, const std::string& path) {
  TDOperator op(sys.backend, sys.dim);
  op.set_signal(sys.formal_signal);
  const Json items = j.is_object() ? Json::array({j}) : j;
  as_array(items, path);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string tp = j.is_object() ? path : index(path, i);
    const Json& t = items[i];
    if (!t.is_object()) throw InputError(tp, "expected a term object");
    const ExpPoly coeff = parse_coeff(require(t, "coeff", tp), join(tp, "coeff"));
    const Json& name = require(t, "op", tp);
    if (!name.is_string()) throw InputError(join(tp, "op"), "expected a basis name");
    try {
      op += sys.term(name.get<std::string>(), coeff);
    } catch (const InputError&) {
      throw InputError(join(tp, "op"), "unknown basis element '" + name.get<std::string>() + "'");
    }
  }
  return op;
}

Json operator_json(const TDOperator& op) {
  Json terms = Json::array();
  for (const auto& term : op.terms()) {
    if (term.label.empty()) throw Error("operator term without a basis label cannot be serialized");
    for (const auto& et : term.coeff.terms()) {
      Json coeff = {{"c", complex_json(et.coeff)},
                    {"p", et.mono.power},
                    {"rate", complex_json(et.mono.rate)}};
      if (!et.mono.formal.empty()) coeff["formal"] = et.mono.formal;
      terms.push_back({{"coeff", coeff}, {"op", term.label}});
    }
  }
  return terms;
}

std::optional<FormalSignal> parse_signal(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  FormalSignal s;
  if (j.contains("offset")) s.offset = as_double(j.at("offset"), join(path, "offset"));
  if (j.contains("amplitude")) s.amplitude = as_double(j.at("amplitude"), join(path, "amplitude"));
  if (j.contains("frequency")) s.frequency = as_double(j.at("frequency"), join(path, "frequency"));
  if (j.contains("phase")) s.phase = as_double(j.at("phase"), join(path, "phase"));
  return s;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("", "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

ComplexVector parse_state(const Json& j, const std::string& path) {
  if (j.is_object()) return parse_state(require(j, "state", ""), "state");
  as_array(j, path);
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = as_complex(j[i], index(path, i));
  return v;
}

Json state_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

SystemSpec parse_spec(const Json& j) {
  if (!j.is_object()) throw InputError("", "spec must be a JSON object");
  SystemSpec sys;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InputError("name", "expected a string");
    sys.name = j.at("name").get<std::string>();
  }
  sys.dim = as_int(require(j, "dimension", ""), "dimension");
  if (sys.dim <= 0) throw InputError("dimension", "must be positive");

  const std::string backend = j.contains("backend") ? j.at("backend").is_string()
                                                          ? j.at("backend").get<std::string>()
                                                          : std::string("?")
                                                    : std::string("matrix");
  if (backend == "matrix") {
    sys.backend = Backend::matrix;
    const Json& basis = require(j, "basis", "");
    if (!basis.is_object()) throw InputError("basis", "expected an object of named matrices");
    for (auto it = basis.begin(); it != basis.end(); ++it)
      sys.basis.push_back({it.key(), parse_matrix(it.value(), sys.dim, "basis." + it.key())});
  } else if (backend == "structure") {
    sys.backend = Backend::structure;
    const Json& names = as_array(require(j, "names", ""), "names");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!names[i].is_string()) throw InputError(index("names", i), "expected a string");
      labels.push_back(names[i].get<std::string>());
    }
    if (static_cast<int>(labels.size()) != sys.dim)
      throw InputError("names", "expected " + std::to_string(sys.dim) + " names");
    LieAlgebraSpec alg(labels);
    const Json& sc = as_array(require(j, "structure_constants", ""), "structure_constants");
    if (static_cast<int>(sc.size()) != sys.dim)
      throw InputError("structure_constants", "expected a dimension^3 array");
    for (int a = 0; a < sys.dim; ++a) {
      const std::string pa = index("structure_constants", static_cast<std::size_t>(a));
      const Json& row = as_array(sc[static_cast<std::size_t>(a)], pa);
      if (static_cast<int>(row.size()) != sys.dim) throw InputError(pa, "wrong length");
      for (int b = 0; b < sys.dim; ++b) {
        const std::string pb = index(pa, static_cast<std::size_t>(b));
        const Json& col = as_array(row[static_cast<std::size_t>(b)], pb);
        if (static_cast<int>(col.size()) != sys.dim) throw InputError(pb, "wrong length");
        for (int c = 0; c < sys.dim; ++c)
          alg.set_constant(a, b, c, as_double(col[static_cast<std::size_t>(c)],
                                              index(pb, static_cast<std::size_t>(c))));
      }
    }
    if (alg.antisymmetry_residual() > 1e-12)
      throw InputError("structure_constants", "not antisymmetric in the first two indices");
    if (alg.jacobi_residual() > 1e-9)
      throw InputError("structure_constants", "violate the Jacobi identity");
    sys.algebra = std::move(alg);
  } else {
    throw InputError("backend", "expected \"matrix\" or \"structure\"");
  }

  if (j.contains("formal_signal")) sys.formal_signal = parse_signal(j.at("formal_signal"), "formal_signal");
  if (j.contains("allow_non_skew")) {
    if (!j.at("allow_non_skew").is_boolean()) throw InputError("allow_non_skew", "expected a boolean");
    sys.allow_non_skew = j.at("allow_non_skew").get<bool>();
  }
  if (j.contains("interior_dim")) sys.interior_dim = as_int(j.at("interior_dim"), "interior_dim");

  sys.drift = j.contains("drift") ? parse_operator(j.at("drift"), sys, "drift")
                                  : TDOperator(sys.backend, sys.dim);
  const Json& controls = as_array(require(j, "controls", ""), "controls");
  for (std::size_t l = 0; l < controls.size(); ++l)
    sys.controls.push_back(parse_operator(controls[l], sys, index("controls", l)));

  if (j.contains("initial_state")) {
    sys.initial_state = parse_state(j.at("initial_state"), "initial_state");
  } else if (sys.backend == Backend::matrix) {
    throw InputError("initial_state", "missing required key");
  }
  if (sys.backend == Backend::matrix && sys.initial_state.size() == sys.dim && !sys.allow_non_skew) {
    const double norm = sys.initial_state.norm();
    if (std::abs(norm - 1.0) > 1e-8)
      throw InputError("initial_state", "norm differs from 1 by more than 1e-8");
    sys.initial_state /= norm;
  }

  if (j.contains("t0")) sys.t0 = as_double(j.at("t0"), "t0");
  if (j.contains("sample_times")) {
    const Json& st = as_array(j.at("sample_times"), "sample_times");
    for (std::size_t i = 0; i < st.size(); ++i)
      sys.sample_times.push_back(as_double(st[i], index("sample_times", i)));
  } else {
    sys.sample_times = {sys.t0};
  }
  if (j.contains("orbit_dim")) sys.orbit_dim = as_int(j.at("orbit_dim"), "orbit_dim");

  sys.validate();
  return sys;
}

SystemSpec load_spec(const std::string& path) { return parse_spec(read_json(path)); }

Json spec_to_json(const SystemSpec& sys) {
  Json j;
  j["name"] = sys.name;
  j["dimension"] = sys.dim;
  j["backend"] = to_string(sys.backend);
  if (sys.backend == Backend::matrix) {
    Json basis = Json::object();
    for (const auto& b : sys.basis) {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < b.matrix.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < b.matrix.cols(); ++c) row.push_back(complex_json(b.matrix(r, c)));
        rows.push_back(row);
      }
      basis[b.name] = rows;
    }
    j["basis"] = basis;
    j["initial_state"] = state_to_json(sys.initial_state);
  } else {
    const LieAlgebraSpec& alg = *sys.algebra;
    j["names"] = alg.names();
    Json sc = Json::array();
    for (int a = 0; a < alg.dim(); ++a) {
      Json row = Json::array();
      for (int b = 0; b < alg.dim(); ++b) {
        Json col = Json::array();
        for (int c = 0; c < alg.dim(); ++c) col.push_back(alg.c(a, b, c));
        row.push_back(col);
      }
      sc.push_back(row);
    }
    j["structure_constants"] = sc;
  }
  j["drift"] = operator_json(sys.drift);
  Json controls = Json::array();
  for (const auto& c : sys.controls) controls.push_back(operator_json(c));
  j["controls"] = controls;
  j["t0"] = sys.t0;
  j["sample_times"] = sys.sample_times;
  if (sys.orbit_dim) j["orbit_dim"] = *sys.orbit_dim;
  if (sys.formal_signal) {
    const auto& s = *sys.formal_signal;
    j["formal_signal"] = {{"offset", s.offset},
                          {"amplitude", s.amplitude},
                          {"frequency", s.frequency},
                          {"phase", s.phase}};
  }
  j["allow_non_skew"] = sys.allow_non_skew;
  j["interior_dim"] = sys.interior_dim;
  return j;
}

ControlSchedule parse_schedule(const Json& j, int num_controls) {
  const Json& segs = j.is_object() ? require(j, "segments", "") : j;
  as_array(segs, "segments");
  ControlSchedule sched;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string path = index("segments", i);
    const Json& s = segs[i];
    if (!s.is_object()) throw InputError(path, "expected an object");
    Segment seg;
    seg.duration = as_double(require(s, "duration", path), join(path, "duration"));
    const Json& u = as_array(require(s, "controls", path), join(path, "controls"));
    for (std::size_t l = 0; l < u.size(); ++l)
      seg.controls.push_back(as_double(u[l], index(join(path, "controls"), l)));
    if (s.contains("drift_scale"))
      seg.drift_scale = as_double(s.at("drift_scale"), join(path, "drift_scale"));
    sched.segments.push_back(std::move(seg));
  }
  sched.validate(num_controls);
  return sched;
}

Json schedule_to_json(const ControlSchedule& sched) {
  Json segs = Json::array();
  for (const auto& s : sched.segments)
    segs.push_back({{"duration", s.duration}, {"controls", s.controls}, {"drift_scale", s.drift_scale}});
  return {{"segments", segs}};
}

Json report_to_json(const ControllabilityReport& report) {
  Json j;
  j["tool"] = {{"name", "liereach"}, {"version", tool_version()}};
  j["system"] = report.system;
  j["check"] = to_string(report.check);
  j["verdict"] = to_string(report.verdict);
  j["m"] = report.m;
  j["m_declared"] = report.m_declared;
  j["orbit_mode"] = report.orbit_mode;
  j["verification_mode"] = to_string(report.mode);
  j["flags"] = report.flags;
  const auto& o = report.options;
  j["options"] = {{"jet_order", o.jet_order},
                  {"max_generations", o.max_generations},
                  {"tol", o.tol},
                  {"max_depth", o.max_depth},
                  {"max_dim", o.max_dim}};
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    Json pairs = Json::array();
    for (const auto& p : s.ideal_pairs) pairs.push_back({{"b", p.b}, {"c", p.c}, {"residual", p.residual}});
    samples.push_back({{"t", s.time},
                       {"dim_B", s.dim_B},
                       {"dim_C", s.dim_C ? Json(*s.dim_C) : Json(nullptr)},
                       {"dim_A", s.dim_A},
                       {"orbit_dim_B", s.orbit_B},
                       {"orbit_dim_C", s.orbit_C ? Json(*s.orbit_C) : Json(nullptr)},
                       {"orbit_dim_A", s.orbit_A},
                       {"ideal_residual_max", s.ideal_residual_max},
                       {"ideal_pairs", pairs},
                       {"generations", s.generations},
                       {"stabilized", s.stabilized},
                       {"words_B", s.words_B},
                       {"words_C", s.words_C},
                       {"words_A", s.words_A}});
  }
  j["samples"] = samples;
  return j;
}

Json trajectory_to_json(const Trajectory& traj) {
  Json states = Json::array();
  for (const auto& s : traj.states) states.push_back(state_to_json(s));
  Json j = {{"times", traj.times},
            {"states", states},
            {"norm_drift", traj.norm_drift},
            {"schedule", schedule_to_json(traj.schedule)}};
  if (!traj.time_component.empty()) j["time_component"] = traj.time_component;
  return j;
}

Json steering_to_json(const SteeringResult& r) {
  return {{"schedule", schedule_to_json(r.schedule)},
          {"fidelity", r.fidelity},
          {"overlap", complex_json(r.overlap)},
          {"evaluations", r.evaluations},
          {"restarts", r.restarts},
          {"converged", r.converged}};
}

void write_report(const ControllabilityReport& report, const std::string& path) {
  write_text(path, canonical_dump(report_to_json(report)));
}

}  // namespace liereach::io
