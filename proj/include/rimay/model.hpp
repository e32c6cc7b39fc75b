#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace rimay {

enum class SymbolKind { actor, class_, property, instance, element, ui_component, text, number, value_literal };

const char* to_string(SymbolKind kind);
std::optional<SymbolKind> symbol_kind_from_string(std::string_view text);

/// The eight component types every table starts with.
const std::set<std::string>& seeded_ui_component_types();

struct SymbolTable {
  std::set<std::string> actors;
  std::map<std::string, std::set<std::string>> classes;
  std::map<std::string, std::string> instances;  // instance -> class
  std::set<std::string> elements;
  std::set<std::string> ui_component_types = seeded_ui_component_types();

  bool operator==(const SymbolTable&) const = default;

  /// Property set of a class, or of an instance's class.
  const std::set<std::string>* properties_of(const std::string& owner) const;
};

/// Class name for instances, property list for classes; empty otherwise.
using DeclDetail = std::variant<std::monostate, std::string, std::set<std::string>>;

/// Kinds accepted: actor, class_, instance, element, ui_component.
SymbolTable declare(const SymbolTable& table, SymbolKind kind, const std::string& name, const DeclDetail& detail = {});

struct Resolution {
  SymbolKind kind;
  std::vector<std::string> path;

  bool operator==(const Resolution&) const = default;
};

/// Single segments resolve actor > instance > class > element > ui_component;
/// two segments resolve to a property of a class or instance.
std::optional<Resolution> resolve_operand(const SymbolTable& table, const std::vector<std::string>& path);

nlohmann::json export_model(const SymbolTable& table);
SymbolTable import_model(const nlohmann::json& doc);
SymbolTable load_model_file(const std::string& path);

}  // namespace rimay
