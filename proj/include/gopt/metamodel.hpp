#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gopt {

enum class FeatureKind { Attribute, Containment, CrossReference };

struct Feature {
  std::string name;
  FeatureKind kind = FeatureKind::Attribute;
  std::string type_name;
  int lower_bound = 0;
  int upper_bound = 1;  // -1 = unbounded

  bool many() const { return upper_bound == -1 || upper_bound > 1; }
  bool operator==(const Feature&) const = default;
};

enum class ClassifierKind { Class, Enum, DataType };

struct Classifier {
  ClassifierKind kind = ClassifierKind::Class;
  std::string name;
  bool is_abstract = false;
  std::vector<std::string> super_types;
  std::vector<Feature> features;
  std::vector<std::string> literals;

  bool operator==(const Classifier&) const = default;
};

struct Metamodel {
  std::string name;
  std::string ns_uri;
  std::vector<Classifier> classifiers;

  const Classifier* find(std::string_view name) const;
};

/// EString, EInt, EBoolean, EFloat, EDouble.
bool is_builtin_type(std::string_view name);

/// Reads an Ecore-subset EPackage document (nested eSubpackages are flattened
/// in package-then-document order). Throws gopt::Error.
Metamodel load_metamodel(std::string_view xml);

/// Features of `cls` including inherited ones: supertypes depth-first in
/// declaration order, inherited before own, first occurrence of a name wins.
std::vector<Feature> collect_features(const Metamodel& m, const Classifier& cls);

/// Classes listing `cls` as a direct supertype, document order.
std::vector<const Classifier*> direct_subclasses(const Metamodel& m, std::string_view cls);

enum class ChangeKind {
  ClassifierAdded,
  ClassifierRemoved,
  FeatureAdded,
  FeatureRemoved,
  FeatureRenamedCandidate,
  BoundChanged,
  FeatureTypeChanged,
  SupertypeChanged,
  AbstractChanged,
  LiteralsChanged,
};

std::string_view to_string(ChangeKind kind) noexcept;

struct MetamodelChange {
  ChangeKind kind;
  std::string classifier;
  std::string feature;      // empty for classifier-level changes
  std::string new_feature;  // rename candidates only
  std::string detail;

  bool operator==(const MetamodelChange&) const = default;
};

/// A feature that disappears from a class while a feature of the same kind,
/// type and bounds appears in it is reported once as a rename candidate.
std::vector<MetamodelChange> diff_metamodels(const Metamodel& a, const Metamodel& b);

std::string format_change(const MetamodelChange& change);

}  // namespace gopt
