#include "scat1d/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scat1d {

using nlohmann::json;

namespace {

RegularPart regular_from_json(const json& j) {
  const std::string kind = j.value("kind", "zero");
  auto params = [&]() -> std::vector<double> {
    if (!j.contains("params")) return {};
    return j.at("params").get<std::vector<double>>();
  };
  RegularPart part = RegularPart::zero();
  if (kind == "zero") {
    part = RegularPart::zero();
  } else if (kind == "box") {
    const auto p = params();
    if (p.size() != 3)
      throw std::runtime_error("regular.params: box needs [height, lo, hi]");
    part = RegularPart::box(p[0], p[1], p[2]);
  } else if (kind == "gaussian") {
    const auto p = params();
    if (p.size() != 3)
      throw std::runtime_error(
          "regular.params: gaussian needs [amplitude, center, width]");
    part = RegularPart::gaussian(p[0], p[1], p[2]);
  } else if (kind == "exponential") {
    const auto p = params();
    if (p.size() != 2)
      throw std::runtime_error("regular.params: exponential needs [amplitude, rate]");
    part = RegularPart::exponential(p[0], p[1]);
  } else if (kind == "table") {
    if (!j.contains("x") || !j.contains("v"))
      throw std::runtime_error("regular: table needs arrays x and v");
    part = RegularPart::table(j.at("x").get<std::vector<double>>(),
                              j.at("v").get<std::vector<double>>());
  } else {
    throw std::runtime_error("regular.kind: unknown kind '" + kind + "'");
  }
  if (j.contains("support")) {
    const double declared = j.at("support").get<double>();
    const double natural = part.support_radius();
    if (std::isfinite(natural) && declared < natural - 1e-12)
      throw std::runtime_error("regular.support: smaller than the data support");
  }
  return part;
}

}  // namespace

PotentialSpec potential_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("potential config: ") + e.what());
  }
  PotentialSpec spec;
  try {
    if (j.contains("deltas")) {
      for (const auto& d : j.at("deltas")) {
        DeltaTerm t;
        t.strength = d.at("c").get<double>();
        t.location = d.at("y").get<double>();
        spec.deltas.push_back(t);
      }
    }
    if (j.contains("regular")) spec.regular = regular_from_json(j.at("regular"));
    spec.gamma = j.value("gamma", 1.6);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("potential config field: ") + e.what());
  }
  const ValidationReport rep = validate(spec);
  if (!rep.ok) {
    std::ostringstream msg;
    msg << "potential config invalid:";
    for (const std::string& v : rep.violations) msg << ' ' << v << ';';
    throw std::runtime_error(msg.str());
  }
  return spec;
}

PotentialSpec load_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open potential file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return potential_from_json(ss.str());
}

std::string potential_to_json(const PotentialSpec& spec) {
  json j;
  j["deltas"] = json::array();
  for (const DeltaTerm& d : spec.deltas)
    j["deltas"].push_back({{"c", d.strength}, {"y", d.location}});
  json reg;
  reg["kind"] = spec.regular.kind_name();
  if (!spec.regular.is_zero() && spec.regular.kind() != RegularPart::Kind::Table)
    reg["params"] = spec.regular.params();
  j["regular"] = reg;
  j["gamma"] = spec.gamma;
  return j.dump(2);
}

}  // namespace scat1d
