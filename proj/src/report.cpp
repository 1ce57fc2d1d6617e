#include "noether/report.hpp"

#include <iomanip>
#include <sstream>

namespace noether {

using Json = nlohmann::ordered_json;

namespace {

Json point_to_json(const Point& p, double value) {
  Json w;
  w["t"] = p.t;
  w["x"] = p.x;
  w["v"] = p.v;
  if (p.a) w["a"] = *p.a;
  if (p.s) w["s"] = *p.s;
  w["value"] = value;
  return w;
}

Json condition_to_json(const ConditionVerdict& v) {
  Json c;
  c["status"] = std::string(status_name(v.status));
  c["residual"] = v.residual;
  if (v.witness) {
    Json w;
    w["t"] = v.witness->t;
    w["detail"] = v.witness->detail;
    if (!v.witness->probe.empty()) {
      w["probe"] = v.witness->probe;
      w["excess"] = v.witness->excess;
    }
    c["witness"] = std::move(w);
  }
  return c;
}

}  // namespace

Json invariance_to_json(const InvarianceVerdict& verdict) {
  Json inv;
  inv["status"] = verdict.invariant ? "invariant" : "not_invariant";
  inv["max_residual"] = verdict.max_residual;
  if (verdict.witness) inv["witness"] = point_to_json(*verdict.witness, verdict.witness_value);
  return inv;
}

Json report_to_json(const AnalysisReport& report, const std::string& problem, const std::string& trajectory) {
  Json doc;
  doc["problem"] = problem;
  doc["trajectory"] = trajectory;
  doc["invariance"] = invariance_to_json(report.invariance);
  doc["noether"] = to_string(report.noether);
  doc["conditions"]["euler_lagrange"] = condition_to_json(report.euler_lagrange);
  doc["conditions"]["dubois_reymond"] = condition_to_json(report.dubois_reymond);
  doc["conditions"]["weierstrass"] = condition_to_json(report.weierstrass);
  doc["classes"]["pontryagin"] = report.pontryagin_class;
  doc["classes"]["theorem4"] = report.theorem4_class;
  doc["conservation"]["deviation"] = report.conservation.deviation;
  doc["conservation"]["status"] = report.conservation.conserved ? "conserved" : "not_conserved";
  doc["conservation"]["mean"] = report.conservation.mean;
  doc["conservation"]["scale"] = report.conservation.scale;
  if (report.finding) doc["finding"] = *report.finding;
  return doc;
}

std::vector<std::string> validate_report_json(const nlohmann::json& doc) {
  std::vector<std::string> errors;
  auto need = [&](const nlohmann::json& obj, const char* key, auto&& predicate, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      errors.push_back(where + "." + key + " missing");
      return false;
    }
    if (!predicate(obj[key])) {
      errors.push_back(where + "." + key + " has the wrong type");
      return false;
    }
    return true;
  };
  auto is_object = [](const nlohmann::json& j) { return j.is_object(); };
  auto is_number = [](const nlohmann::json& j) { return j.is_number(); };
  auto is_bool = [](const nlohmann::json& j) { return j.is_boolean(); };
  auto is_string = [](const nlohmann::json& j) { return j.is_string(); };
  auto one_of = [](std::initializer_list<const char*> allowed) {
    return [allowed](const nlohmann::json& j) {
      if (!j.is_string()) return false;
      for (const char* a : allowed) {
        if (j.get<std::string>() == a) return true;
      }
      return false;
    };
  };

  if (need(doc, "invariance", is_object, "report")) {
    need(doc["invariance"], "status", one_of({"invariant", "not_invariant"}), "invariance");
    need(doc["invariance"], "max_residual", is_number, "invariance");
  }
  need(doc, "noether", is_string, "report");
  if (need(doc, "conditions", is_object, "report")) {
    for (const char* name : {"euler_lagrange", "dubois_reymond", "weierstrass"}) {
      if (!need(doc["conditions"], name, is_object, "conditions")) continue;
      const auto& c = doc["conditions"][name];
      std::string where = std::string("conditions.") + name;
      need(c, "status", one_of({"pass", "fail"}), where);
      need(c, "residual", is_number, where);
      if (c.contains("witness")) need(c, "witness", is_object, where);
      if (c.contains("status") && c["status"] == "fail" && !c.contains("witness")) {
        errors.push_back(where + " fails without a witness");
      }
    }
  }
  if (need(doc, "classes", is_object, "report")) {
    need(doc["classes"], "pontryagin", is_bool, "classes");
    need(doc["classes"], "theorem4", is_bool, "classes");
  }
  if (need(doc, "conservation", is_object, "report")) {
    need(doc["conservation"], "deviation", is_number, "conservation");
    need(doc["conservation"], "status", one_of({"conserved", "not_conserved"}), "conservation");
  }
  return errors;
}

void print_report_table(std::ostream& out, const AnalysisReport& report, const std::string& problem,
                        const std::string& trajectory) {
  auto row = [&](const std::string& label, const std::string& value) {
    out << "  " << std::left << std::setw(18) << label << value << '\n';
  };
  auto number = [](double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
  };
  auto condition = [&](const std::string& label, const ConditionVerdict& v) {
    std::string text = std::string(status_name(v.status)) + "  (residual " + number(v.residual) + ")";
    if (v.witness) text += "  at t=" + number(v.witness->t) + ": " + v.witness->detail;
    row(label, text);
  };

  out << problem << " / " << trajectory << '\n';
  row("invariance", std::string(report.invariance.invariant ? "invariant" : "not invariant") + "  (max residual " +
                        number(report.invariance.max_residual) + ")");
  row("noether quantity", to_string(report.noether));
  condition("euler-lagrange", report.euler_lagrange);
  condition("dubois-reymond", report.dubois_reymond);
  condition("weierstrass", report.weierstrass);
  row("pontryagin class", report.pontryagin_class ? "yes" : "no");
  row("EL+DBR class", report.theorem4_class ? "yes" : "no");
  row("conservation", std::string(report.conservation.conserved ? "conserved" : "not conserved") +
                          "  (deviation " + number(report.conservation.deviation) + ", mean " +
                          number(report.conservation.mean) + ")");
  if (report.finding) row("FINDING", *report.finding);
}

}  // namespace noether
