#include "pforge/core/dataset_io.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace pforge {

using nlohmann::json;

namespace {

Vec number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::invalid_argument(std::string("missing numeric array '") + key + "'");
  }
  Vec out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw std::invalid_argument(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string("missing number '") + key + "'");
  }
  return j.at(key).get<double>();
}

std::size_t count(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw std::invalid_argument(std::string("missing count '") + key + "'");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

json constraint_to_json(const ConstraintFunction& f) {
  json j;
  j["kind"] = std::string(to_string(f.kind()));
  if (f.kind() == ConstraintKind::ShiftedBase) j["base"] = std::string(to_string(f.base_kind()));
  j["alpha"] = f.alpha();
  j["b"] = f.offset();
  j["a_t"] = f.shift();
  j["beta"] = f.beta();
  return j;
}

ConstraintFunction constraint_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("constraint must be an object");
  const ConstraintKind kind = constraint_kind_from_string(j.at("kind").get<std::string>());
  Vec alpha = number_array(j, "alpha");
  const double b = number(j, "b");
  auto make_base = [&](ConstraintKind k) {
    if (k == ConstraintKind::Affine) return ConstraintFunction::affine(alpha, b);
    if (k == ConstraintKind::LogSigmoid) return ConstraintFunction::log_sigmoid(alpha, b);
    throw std::invalid_argument("shifted_base needs base 'affine' or 'log_sigmoid'");
  };
  if (kind != ConstraintKind::ShiftedBase) return make_base(kind);
  if (!j.contains("base")) throw std::invalid_argument("shifted_base constraint needs 'base'");
  const ConstraintKind base = constraint_kind_from_string(j.at("base").get<std::string>());
  return make_base(base).shifted(number(j, "a_t"), number_array(j, "beta"));
}

json dataset_to_json(const RPDataset& d) {
  json cons = json::array(), strats = json::array();
  for (std::size_t t = 0; t < d.T(); ++t) {
    json crow = json::array(), srow = json::array();
    for (std::size_t i = 0; i < d.M(); ++i) {
      crow.push_back(constraint_to_json(d.constraint(t, i)));
      srow.push_back(json{{"samples", d.strategy(t, i).samples()}});
    }
    cons.push_back(std::move(crow));
    strats.push_back(std::move(srow));
  }
  return json{{"T", d.T()}, {"M", d.M()}, {"k", d.k()},
              {"constraints", std::move(cons)}, {"strategies", std::move(strats)}};
}

RPDataset dataset_from_json(const json& j, double tol_feas) {
  if (!j.is_object()) throw std::invalid_argument("dataset must be a JSON object");
  const std::size_t T = count(j, "T"), M = count(j, "M"), k = count(j, "k");
  const auto& cons = j.at("constraints");
  const auto& strats = j.at("strategies");
  if (!cons.is_array() || cons.size() != T || !strats.is_array() || strats.size() != T) {
    throw std::invalid_argument("constraints/strategies must have T rows");
  }
  ConstraintGrid cg(T);
  Grid<EmpiricalStrategy> sg(T);
  for (std::size_t t = 0; t < T; ++t) {
    if (cons[t].size() != M || strats[t].size() != M) {
      throw std::invalid_argument("dataset row " + std::to_string(t) + " must have M entries");
    }
    for (std::size_t i = 0; i < M; ++i) {
      cg[t].push_back(constraint_from_json(cons[t][i]));
      if (cg[t].back().dim() != k) throw std::invalid_argument("constraint dimension != k");
      std::vector<Vec> samples;
      for (const auto& x : strats[t][i].at("samples")) samples.push_back(x.get<Vec>());
      sg[t].emplace_back(std::move(samples));
    }
  }
  return RPDataset(std::move(cg), std::move(sg), tol_feas);
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

RPDataset read_dataset(const std::filesystem::path& path, double tol_feas) {
  try {
    return dataset_from_json(read_json_file(path), tol_feas);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_dataset(const RPDataset& d, const std::filesystem::path& path) {
  write_json_file(dataset_to_json(d), path);
}

}  // namespace pforge
