#include <stdexcept>

#include <json.hpp>

#include "wwlab/torus.hpp"

namespace wwlab {

namespace {

using nlohmann::json;

json to_json_tree(const SystemSpec& sys) {
  if (const auto* rot = std::get_if<RotationSpec>(&sys.node)) {
    return json{{"type", "rotation"}, {"alpha", rot->alpha.value()}};
  }
  if (const auto* skew = std::get_if<SkewSpec>(&sys.node)) {
    return json{{"type", "skew"},
                {"m", skew->degree},
                {"alpha", skew->alpha.value()},
                {"form", skew->form == SkewForm::kExact ? "calibrated" : "generic"}};
  }
  const auto& prod = std::get<ProductSpec>(sys.node);
  return json{{"type", "product"},
              {"left", to_json_tree(*prod.left)},
              {"right", to_json_tree(*prod.right)}};
}

void require_keys(const json& j, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (key == k) known = true;
    if (!known) throw std::invalid_argument("system json: unknown key '" + key + "'");
  }
  for (const char* k : keys)
    if (!j.contains(k)) throw std::invalid_argument(std::string("system json: missing key '") + k + "'");
}

SystemSpec from_json_tree(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("system json: expected object with 'type'");
  std::string type = j.at("type").get<std::string>();
  if (type == "rotation") {
    require_keys(j, {"type", "alpha"});
    return make_rotation(Angle::turns(j.at("alpha").get<double>()));
  }
  if (type == "skew") {
    require_keys(j, {"type", "m", "alpha", "form"});
    std::string form = j.at("form").get<std::string>();
    if (form != "calibrated" && form != "generic")
      throw std::invalid_argument("system json: form must be 'calibrated' or 'generic'");
    return make_skew(j.at("m").get<int>(), Angle::turns(j.at("alpha").get<double>()),
                     form == "calibrated" ? SkewForm::kExact : SkewForm::kGeneric);
  }
  if (type == "product") {
    require_keys(j, {"type", "left", "right"});
    return make_product(from_json_tree(j.at("left")), from_json_tree(j.at("right")));
  }
  throw std::invalid_argument("system json: unknown type '" + type + "'");
}

}  // namespace

std::string system_to_json(const SystemSpec& sys) { return to_json_tree(sys).dump(); }

SystemSpec system_from_json(std::string_view text) {
  json j = json::parse(text);
  return from_json_tree(j);
}

}  // namespace wwlab
