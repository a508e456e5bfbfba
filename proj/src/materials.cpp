#include <fstream>

#include <json.hpp>

#include "afqc/physics.hpp"

namespace afqc::physics {

namespace {

MaterialParams from_json(const nlohmann::json& j, const PhysicalConstants& c) {
  MaterialParams m;
  m.name = j.at("name").get<std::string>();
  m.g_N = j.at("g_N").get<double>();
  m.A = j.at("A").get<double>();
  if (j.contains("I_n") && !j.at("I_n").is_null()) m.I_n = j.at("I_n").get<double>();
  // Exchange may be given directly or through the quoted ordering temperature.
  if (j.contains("J_ex")) {
    m.J_ex = j.at("J_ex").get<double>();
  } else {
    m.J_ex = c.k * j.at("T_NS").get<double>();
  }
  m.J_A = j.contains("J_A") ? j.at("J_A").get<double>() : j.at("J_A_fraction").get<double>() * m.J_ex;
  m.a = j.at("a").get<double>();
  m.d = j.at("d").get<int>();
  m.Z = j.at("Z").get<int>();
  m.S = j.value("S", 0.5);
  if (j.contains("estimated")) m.estimated = j.at("estimated").get<std::vector<std::string>>();
  m.validate();
  return m;
}

}  // namespace

std::vector<MaterialParams> load_materials(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open material file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  std::vector<MaterialParams> out;
  const PhysicalConstants c;
  for (const auto& rec : doc.at("materials")) {
    try {
      out.push_back(from_json(rec, c));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path.string() + ": bad record: " + e.what());
    }
  }
  return out;
}

MaterialParams find_material(const std::vector<MaterialParams>& materials, std::string_view name) {
  for (const auto& m : materials) {
    if (m.name == name) return m;
  }
  throw UnknownMaterial("unknown material '" + std::string(name) + "'");
}

}  // namespace afqc::physics
