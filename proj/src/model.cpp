#include "rimay/model.hpp"

#include <fstream>
#include <sstream>

#include "rimay/error.hpp"

namespace rimay {

using nlohmann::json;

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::actor: return "actor";
    case SymbolKind::class_: return "class";
    case SymbolKind::property: return "property";
    case SymbolKind::instance: return "instance";
    case SymbolKind::element: return "element";
    case SymbolKind::ui_component: return "ui_component";
    case SymbolKind::text: return "text";
    case SymbolKind::number: return "number";
    case SymbolKind::value_literal: return "value_literal";
  }
  return "element";
}

std::optional<SymbolKind> symbol_kind_from_string(std::string_view text) {
  for (SymbolKind k : {SymbolKind::actor, SymbolKind::class_, SymbolKind::property, SymbolKind::instance,
                       SymbolKind::element, SymbolKind::ui_component, SymbolKind::text, SymbolKind::number,
                       SymbolKind::value_literal}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

const std::set<std::string>& seeded_ui_component_types() {
  static const std::set<std::string> seeded{"tab", "page", "bar", "field", "calendar", "checkbox", "menu", "message"};
  return seeded;
}

const std::set<std::string>* SymbolTable::properties_of(const std::string& owner) const {
  auto inst = instances.find(owner);
  const std::string& cls = inst != instances.end() ? inst->second : owner;
  auto it = classes.find(cls);
  return it == classes.end() ? nullptr : &it->second;
}

namespace {

// Category a name currently occupies, ignoring the class/instance overlap.
std::optional<SymbolKind> category_of(const SymbolTable& t, const std::string& name) {
  if (t.actors.contains(name)) return SymbolKind::actor;
  if (t.instances.contains(name)) return SymbolKind::instance;
  if (t.classes.contains(name)) return SymbolKind::class_;
  if (t.elements.contains(name)) return SymbolKind::element;
  if (t.ui_component_types.contains(name)) return SymbolKind::ui_component;
  return std::nullopt;
}

bool compatible(SymbolKind existing, SymbolKind wanted) {
  if (existing == wanted) return true;
  return (existing == SymbolKind::class_ && wanted == SymbolKind::instance) ||
         (existing == SymbolKind::instance && wanted == SymbolKind::class_);
}

void check_category(const SymbolTable& t, SymbolKind kind, const std::string& name) {
  auto occupied = [&](SymbolKind k) {
    switch (k) {
      case SymbolKind::actor: return t.actors.contains(name);
      case SymbolKind::class_: return t.classes.contains(name);
      case SymbolKind::instance: return t.instances.contains(name);
      case SymbolKind::element: return t.elements.contains(name);
      case SymbolKind::ui_component: return t.ui_component_types.contains(name);
      default: return false;
    }
  };
  for (SymbolKind k : {SymbolKind::actor, SymbolKind::class_, SymbolKind::instance, SymbolKind::element,
                       SymbolKind::ui_component}) {
    if (occupied(k) && !compatible(k, kind)) {
      throw Error(ErrorCode::conflict,
                  "'" + name + "' is already declared as " + to_string(k) + ", cannot redeclare as " + to_string(kind),
                  std::nullopt, {name});
    }
  }
}

}  // namespace

SymbolTable declare(const SymbolTable& table, SymbolKind kind, const std::string& name, const DeclDetail& detail) {
  if (name.empty()) throw Error(ErrorCode::validation, "cannot declare an empty name");
  check_category(table, kind, name);
  SymbolTable out = table;
  switch (kind) {
    case SymbolKind::actor:
      out.actors.insert(name);
      break;
    case SymbolKind::element:
      out.elements.insert(name);
      break;
    case SymbolKind::ui_component:
      out.ui_component_types.insert(name);
      break;
    case SymbolKind::class_: {
      std::set<std::string> props;
      if (const auto* p = std::get_if<std::set<std::string>>(&detail)) props = *p;
      for (const std::string& prop : props) {
        if (prop.empty()) throw Error(ErrorCode::validation, "class '" + name + "' has an empty property name");
      }
      auto it = out.classes.find(name);
      if (it != out.classes.end() && it->second != props) {
        throw Error(ErrorCode::conflict, "class '" + name + "' is already declared with different properties",
                    std::nullopt, {name});
      }
      out.classes[name] = std::move(props);
      break;
    }
    case SymbolKind::instance: {
      const auto* cls = std::get_if<std::string>(&detail);
      if (cls == nullptr || !out.classes.contains(*cls)) {
        std::string wanted = cls ? *cls : "";
        throw Error(ErrorCode::unresolved_class, "instance '" + name + "' refers to unknown class '" + wanted + "'",
                    std::nullopt, {wanted});
      }
      auto it = out.instances.find(name);
      if (it != out.instances.end() && it->second != *cls) {
        throw Error(ErrorCode::conflict, "instance '" + name + "' is already of type '" + it->second + "'",
                    std::nullopt, {name});
      }
      out.instances[name] = *cls;
      break;
    }
    default:
      throw Error(ErrorCode::usage, std::string("cannot declare symbols of kind ") + to_string(kind));
  }
  return out;
}

std::optional<Resolution> resolve_operand(const SymbolTable& table, const std::vector<std::string>& path) {
  if (path.empty()) return std::nullopt;
  if (path.size() == 1) {
    auto kind = category_of(table, path[0]);
    if (!kind) return std::nullopt;
    return Resolution{*kind, path};
  }
  if (path.size() == 2) {
    if (!table.instances.contains(path[0]) && !table.classes.contains(path[0])) return std::nullopt;
    const auto* props = table.properties_of(path[0]);
    if (props != nullptr && props->contains(path[1])) return Resolution{SymbolKind::property, path};
  }
  return std::nullopt;
}

json export_model(const SymbolTable& table) {
  json classes = json::object();
  for (const auto& [name, props] : table.classes) classes[name] = props;
  json instances = json::object();
  for (const auto& [name, cls] : table.instances) instances[name] = cls;
  return json{{"actors", table.actors},
              {"classes", classes},
              {"instances", instances},
              {"elements", table.elements},
              {"ui_component_types", table.ui_component_types}};
}

namespace {

std::set<std::string> string_set(const json& doc, const char* key) {
  std::set<std::string> out;
  if (!doc.contains(key)) return out;
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(ErrorCode::format, std::string("model field '") + key + "' must be an array");
  for (const json& v : arr) {
    if (!v.is_string() || v.get<std::string>().empty()) {
      throw Error(ErrorCode::format, std::string("model field '") + key + "' must hold non-empty strings");
    }
    out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace

SymbolTable import_model(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::format, "model document must be an object");
  SymbolTable t;
  t.ui_component_types.clear();
  try {
    for (const std::string& a : string_set(doc, "actors")) t = declare(t, SymbolKind::actor, a);
    if (doc.contains("classes")) {
      if (!doc.at("classes").is_object()) throw Error(ErrorCode::format, "model field 'classes' must be an object");
      for (const auto& [name, props] : doc.at("classes").items()) {
        std::set<std::string> p;
        if (!props.is_array()) throw Error(ErrorCode::format, "properties of class '" + name + "' must be an array");
        for (const json& v : props) {
          if (!v.is_string()) throw Error(ErrorCode::format, "property names of '" + name + "' must be strings");
          p.insert(v.get<std::string>());
        }
        t = declare(t, SymbolKind::class_, name, p);
      }
    }
    if (doc.contains("instances")) {
      if (!doc.at("instances").is_object()) throw Error(ErrorCode::format, "model field 'instances' must be an object");
      for (const auto& [name, cls] : doc.at("instances").items()) {
        if (!cls.is_string()) throw Error(ErrorCode::format, "class of instance '" + name + "' must be a string");
        t = declare(t, SymbolKind::instance, name, cls.get<std::string>());
      }
    }
    for (const std::string& e : string_set(doc, "elements")) t = declare(t, SymbolKind::element, e);
    for (const std::string& u : seeded_ui_component_types()) t.ui_component_types.insert(u);
    for (const std::string& u : string_set(doc, "ui_component_types")) t = declare(t, SymbolKind::ui_component, u);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::format) throw;
    throw Error(ErrorCode::format, std::string("invalid model: ") + e.what(), std::nullopt, e.details());
  }
  return t;
}

SymbolTable load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::format, std::string("malformed model: ") + e.what());
  }
  return import_model(doc);
}

}  // namespace rimay
