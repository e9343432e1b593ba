#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "cdcr/scenario.hpp"
#include "json.hpp"

namespace cdcr {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kInvalidConfig, path + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) config_error(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      config_error(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

double number_field(const json& obj, const std::string& path,
                    const char* key) {
  const std::string where = path + "." + key;
  if (!obj.contains(key)) config_error(where, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) config_error(where, "expected a number");
  return v.get<double>();
}

StepModel parse_step(const json& obj, const std::string& path) {
  reject_unknown(obj, path,
                 {"p_a", "t_confirm", "t_diagnose", "t_correct", "t_redo"});
  StepModel s;
  s.p_a = number_field(obj, path, "p_a");
  s.t_confirm = number_field(obj, path, "t_confirm");
  s.t_diagnose = number_field(obj, path, "t_diagnose");
  s.t_correct = number_field(obj, path, "t_correct");
  s.t_redo = number_field(obj, path, "t_redo");
  return s;
}

json step_json(const StepModel& s) {
  json out = json::object();
  out["p_a"] = s.p_a;
  out["t_confirm"] = s.t_confirm;
  out["t_diagnose"] = s.t_diagnose;
  out["t_correct"] = s.t_correct;
  out["t_redo"] = s.t_redo;
  return out;
}

std::string string_field(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_string()) config_error(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("parse error: ") + e.what());
  }
  reject_unknown(root, "",
                 {"name", "description", "provenance", "steps", "uniform"});

  if (!root.contains("name")) config_error("name", "missing");
  std::string name = string_field(root, "name");
  std::string description =
      root.contains("description") ? string_field(root, "description") : "";

  const bool has_steps = root.contains("steps");
  const bool has_uniform = root.contains("uniform");
  if (has_steps == has_uniform) {
    config_error("steps", "exactly one of 'steps' or 'uniform' is required");
  }

  std::vector<StepModel> steps;
  if (has_steps) {
    const json& arr = root.at("steps");
    if (!arr.is_array()) config_error("steps", "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      steps.push_back(parse_step(arr[k], "steps[" + std::to_string(k) + "]"));
    }
  } else {
    const json& u = root.at("uniform");
    reject_unknown(u, "uniform",
                   {"n", "p_a", "t_confirm", "t_diagnose", "t_correct", "t_redo"});
    if (!u.contains("n")) config_error("uniform.n", "missing");
    if (!u.at("n").is_number_unsigned() || u.at("n").get<std::size_t>() == 0) {
      config_error("uniform.n", "expected a positive integer");
    }
    json step = u;
    step.erase("n");
    steps.assign(u.at("n").get<std::size_t>(), parse_step(step, "uniform"));
  }

  std::map<std::string, std::string> provenance;
  for (const char* field : kScenarioFields) provenance[field] = "user";
  if (root.contains("provenance")) {
    const json& p = root.at("provenance");
    reject_unknown(p, "provenance", {std::begin(kScenarioFields),
                                     std::end(kScenarioFields)});
    for (const auto& [key, tag] : p.items()) {
      const std::string where = "provenance." + key;
      if (!tag.is_string()) config_error(where, "expected a string");
      const std::string t = tag.get<std::string>();
      if (t != "published" && t != "assumed" && t != "user") {
        config_error(where, "expected published, assumed or user, got '" + t + "'");
      }
      provenance[key] = t;
    }
  }

  try {
    Scenario scenario{std::move(name), std::move(description),
                      TaskPlan(std::move(steps)), std::move(provenance)};
    validate_scenario(scenario);
    return scenario;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    config_error(has_steps ? "steps" : "uniform",
                 std::string(to_string(e.code())) + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "cannot read '" + path + "'");
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string to_config(const Scenario& scenario) {
  json root = json::object();
  root["name"] = scenario.name;
  root["description"] = scenario.description;
  root["provenance"] = scenario.provenance;
  const TaskPlan& plan = scenario.plan;
  if (plan.is_uniform()) {
    json u = step_json(plan.step(1));
    u["n"] = plan.size();
    root["uniform"] = std::move(u);
  } else {
    json arr = json::array();
    for (const StepModel& s : plan.steps()) arr.push_back(step_json(s));
    root["steps"] = std::move(arr);
  }
  return root.dump(2) + "\n";
}

}  // namespace cdcr
