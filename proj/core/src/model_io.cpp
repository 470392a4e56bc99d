#include "recip/model_io.hpp"

#include <algorithm>
#include <fstream>

#include "recip/csv.hpp"

namespace recip {

namespace {

void write_vector(std::ofstream& out, const std::string& key, const Eigen::VectorXd& v) {
  out << key;
  for (long i = 0; i < v.size(); ++i) out << ' ' << format_exact(v[i]);
  out << '\n';
}

Eigen::VectorXd parse_vector(const std::vector<std::string>& fields, std::size_t from,
                             long lineno) {
  Eigen::VectorXd v(static_cast<long>(fields.size() - from));
  for (std::size_t i = from; i < fields.size(); ++i)
    v[static_cast<long>(i - from)] = parse_double(fields[i], lineno);
  return v;
}

}  // namespace

void save_model(const std::string& path, const ModelFile& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "recip-model 1\n";
  out << "kind " << m.kind << '\n';
  out << "d " << m.w.size() << '\n';
  for (const auto& [key, value] : m.params) out << "param " << key << ' ' << value << '\n';
  write_vector(out, "w", m.w);
  if (m.scaler.has_value()) {
    write_vector(out, "scaler_mean", m.scaler->mean);
    write_vector(out, "scaler_stdev", m.scaler->stdev);
  }
  out << "webers " << m.weber_points.size() << '\n';
  for (const auto& [target, point] : m.weber_points) {
    write_vector(out, "weber " + target, point);
  }
  if (!out) throw IoError("write failed: " + path);
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line) || line != "recip-model 1")
    throw ParseError("unrecognized model file header in " + path, 1);
  lineno = 1;
  ModelFile m;
  long expected_webers = -1;
  Eigen::VectorXd mean, stdev;
  bool have_mean = false, have_stdev = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ' ');
    const std::string& key = fields[0];
    if (key == "kind" && fields.size() == 2) {
      m.kind = fields[1];
    } else if (key == "d" && fields.size() == 2) {
      // dimension is implied by the w row; kept as a readable check
      const long d = parse_long(fields[1], lineno);
      if (d < 1) throw ParseError("bad dimension", lineno);
    } else if (key == "param" && fields.size() >= 3) {
      std::string value = fields[2];
      for (std::size_t i = 3; i < fields.size(); ++i) value += " " + fields[i];
      m.params[fields[1]] = value;
    } else if (key == "w") {
      m.w = parse_vector(fields, 1, lineno);
    } else if (key == "scaler_mean") {
      mean = parse_vector(fields, 1, lineno);
      have_mean = true;
    } else if (key == "scaler_stdev") {
      stdev = parse_vector(fields, 1, lineno);
      have_stdev = true;
    } else if (key == "webers" && fields.size() == 2) {
      expected_webers = parse_long(fields[1], lineno);
    } else if (key == "weber" && fields.size() >= 3) {
      m.weber_points.emplace_back(fields[1], parse_vector(fields, 2, lineno));
    } else {
      throw ParseError("unrecognized model line: " + line, lineno);
    }
  }
  if (m.kind.empty()) throw ParseError("model file missing kind", -1);
  if (m.w.size() == 0) throw ParseError("model file missing w", -1);
  if (have_mean != have_stdev) throw ParseError("incomplete scaler in model file", -1);
  if (have_mean) m.scaler = Standardization{mean, stdev};
  if (expected_webers >= 0 && expected_webers != static_cast<long>(m.weber_points.size()))
    throw ParseError("weber count mismatch in model file", -1);
  return m;
}

namespace {

std::map<std::string, std::string> dprr_params(const DprrModel& model) {
  std::map<std::string, std::string> p;
  p["alpha"] = format_exact(model.config.alpha);
  p["beta"] = format_exact(model.config.beta);
  p["rho"] = format_exact(model.config.rho);
  p["max_iterations"] = std::to_string(model.config.max_iterations);
  p["tol_primal"] = format_exact(model.config.tol_primal);
  p["tol_dual"] = format_exact(model.config.tol_dual);
  p["group_pair_cap"] = std::to_string(model.config.group_pair_cap);
  p["seed"] = std::to_string(model.config.seed);
  p["iterations"] = std::to_string(model.diag.iterations);
  p["converged"] = model.diag.converged ? "1" : "0";
  p["objective"] = format_exact(model.diag.final_objective);
  return p;
}

}  // namespace

ModelFile to_model_file(const DprrModel& model) {
  ModelFile m;
  m.kind = model.config.pin_global_to_zero ? "pd" : "dprr";
  m.w = model.w;
  m.scaler = model.scaler;
  m.params = dprr_params(model);
  for (std::size_t g = 0; g < model.target_names.size(); ++g) {
    m.weber_points.emplace_back(model.target_names[g], model.weber_points[g]);
  }
  std::sort(m.weber_points.begin(), m.weber_points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return m;
}

ModelFile to_model_file(const RidgeModel& model, const std::optional<Standardization>& scaler) {
  ModelFile m;
  m.kind = "ridge";
  m.w = model.w;
  m.scaler = scaler;
  m.params["alpha"] = format_exact(model.alpha);
  return m;
}

ModelFile to_model_file(const LassoModel& model, const std::optional<Standardization>& scaler) {
  ModelFile m;
  m.kind = "lasso";
  m.w = model.w;
  m.scaler = scaler;
  m.params["lambda"] = format_exact(model.lambda);
  m.params["sweeps"] = std::to_string(model.sweeps);
  m.params["converged"] = model.converged ? "1" : "0";
  return m;
}

DprrModel dprr_from_model_file(const ModelFile& m) {
  if (m.kind != "dprr" && m.kind != "pd")
    throw DataError("model file holds a '" + m.kind + "' model, not dprr/pd");
  DprrModel model;
  model.w = m.w;
  model.scaler = m.scaler;
  model.config.pin_global_to_zero = m.kind == "pd";
  auto get = [&m](const std::string& key, double fallback) {
    auto it = m.params.find(key);
    return it == m.params.end() ? fallback : parse_double(it->second);
  };
  model.config.alpha = get("alpha", model.config.alpha);
  model.config.beta = get("beta", model.config.beta);
  model.config.rho = get("rho", model.config.rho);
  model.diag.final_objective = get("objective", 0.0);
  model.diag.iterations = static_cast<long>(get("iterations", 0));
  model.diag.converged = get("converged", 1) != 0;
  model.target_names.reserve(m.weber_points.size());
  model.weber_points.reserve(m.weber_points.size());
  for (const auto& [target, point] : m.weber_points) {
    model.group_by_target[target] = static_cast<int>(model.target_names.size());
    model.target_names.push_back(target);
    model.weber_points.push_back(point);
  }
  return model;
}

}  // namespace recip
