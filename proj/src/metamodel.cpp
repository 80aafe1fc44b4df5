#include "gopt/metamodel.hpp"

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gopt/error.hpp"

namespace gopt {

namespace pt = boost::property_tree;

const Classifier* Metamodel::find(std::string_view name) const {
  auto it = std::find_if(classifiers.begin(), classifiers.end(), [&](const Classifier& c) { return c.name == name; });
  return it == classifiers.end() ? nullptr : &*it;
}

bool is_builtin_type(std::string_view name) {
  return name == "EString" || name == "EInt" || name == "EBoolean" || name == "EFloat" || name == "EDouble";
}

namespace {

std::string attr(const pt::ptree& node, const std::string& key, const std::string& fallback = {}) {
  return node.get<std::string>("<xmlattr>." + key, fallback);
}

bool has_attr(const pt::ptree& node, const std::string& key) {
  return node.get_child_optional("<xmlattr>." + key).has_value();
}

// "#//Name", "#//sub/Name", "ecore:EDataType http://...Ecore#//EString" -> Name
std::string type_ref_name(std::string_view ref) {
  const auto slash = ref.find_last_of('/');
  if (slash != std::string_view::npos) ref.remove_prefix(slash + 1);
  const auto hash = ref.find_last_of('#');
  if (hash != std::string_view::npos) ref.remove_prefix(hash + 1);
  return std::string(ref);
}

std::vector<std::string> split_refs(const std::string& refs) {
  std::vector<std::string> out;
  std::istringstream in(refs);
  std::string tok;
  while (in >> tok) out.push_back(type_ref_name(tok));
  return out;
}

int to_int(const std::string& text, int fallback, const std::string& what) {
  if (text.empty()) return fallback;
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedXml, "invalid integer '" + text + "' for " + what);
  }
}

std::string strip_prefix(const std::string& xsi_type) {
  const auto colon = xsi_type.find(':');
  return colon == std::string::npos ? xsi_type : xsi_type.substr(colon + 1);
}

Feature read_feature(const pt::ptree& node, const std::string& owner) {
  const std::string type = strip_prefix(attr(node, "xsi:type"));
  Feature f;
  f.name = attr(node, "name");
  if (f.name.empty()) throw Error(ErrorCode::MalformedXml, "feature without name in class " + owner);
  if (type == "EAttribute") {
    f.kind = FeatureKind::Attribute;
  } else if (type == "EReference") {
    if (has_attr(node, "eOpposite")) {
      throw Error(ErrorCode::BidirectionalReference,
                  "reference " + owner + "." + f.name + " declares an eOpposite; bidirectional references are not supported");
    }
    f.kind = attr(node, "containment") == "true" ? FeatureKind::Containment : FeatureKind::CrossReference;
  } else {
    throw Error(ErrorCode::MalformedXml, "feature " + owner + "." + f.name + " has unsupported xsi:type '" + type + "'");
  }
  f.type_name = type_ref_name(attr(node, "eType"));
  f.lower_bound = to_int(attr(node, "lowerBound"), 0, owner + "." + f.name + " lowerBound");
  f.upper_bound = to_int(attr(node, "upperBound"), 1, owner + "." + f.name + " upperBound");
  return f;
}

Classifier read_classifier(const pt::ptree& node) {
  const std::string type = strip_prefix(attr(node, "xsi:type"));
  Classifier c;
  c.name = attr(node, "name");
  if (c.name.empty()) throw Error(ErrorCode::MalformedXml, "classifier without name");
  if (type == "EClass") {
    c.kind = ClassifierKind::Class;
    c.is_abstract = attr(node, "abstract") == "true" || attr(node, "interface") == "true";
    c.super_types = split_refs(attr(node, "eSuperTypes"));
    for (const auto& [key, child] : node) {
      if (key == "eStructuralFeatures") c.features.push_back(read_feature(child, c.name));
    }
  } else if (type == "EEnum") {
    c.kind = ClassifierKind::Enum;
    for (const auto& [key, child] : node) {
      if (key == "eLiterals") c.literals.push_back(attr(child, "name"));
    }
  } else if (type == "EDataType") {
    c.kind = ClassifierKind::DataType;
  } else {
    throw Error(ErrorCode::MalformedXml, "classifier " + c.name + " has unsupported xsi:type '" + type + "'");
  }
  return c;
}

void read_package(const pt::ptree& node, Metamodel& m) {
  for (const auto& [key, child] : node) {
    if (key == "eClassifiers") m.classifiers.push_back(read_classifier(child));
  }
  for (const auto& [key, child] : node) {
    if (key == "eSubpackages") read_package(child, m);
  }
}

void validate(const Metamodel& m) {
  std::set<std::string, std::less<>> names;
  for (const auto& c : m.classifiers) {
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::DuplicateClassifier, "duplicate classifier name '" + c.name + "'");
    }
  }
  for (const auto& c : m.classifiers) {
    for (const auto& s : c.super_types) {
      const Classifier* sc = m.find(s);
      if (sc == nullptr || sc->kind != ClassifierKind::Class) {
        throw Error(ErrorCode::UnresolvedType, "supertype '" + s + "' of " + c.name + " is not a known class");
      }
    }
    for (const auto& f : c.features) {
      const std::string where = c.name + "." + f.name;
      if (f.lower_bound < 0 || f.upper_bound < -1 || (f.upper_bound != -1 && f.upper_bound < std::max(1, f.lower_bound))) {
        throw Error(ErrorCode::InvalidBounds, "invalid multiplicity on " + where);
      }
      const Classifier* t = m.find(f.type_name);
      if (f.kind == FeatureKind::Attribute) {
        if (!is_builtin_type(f.type_name) && (t == nullptr || t->kind == ClassifierKind::Class)) {
          throw Error(ErrorCode::UnresolvedType, "attribute " + where + " has unknown type '" + f.type_name + "'");
        }
      } else if (t == nullptr || t->kind != ClassifierKind::Class) {
        throw Error(ErrorCode::UnresolvedType, "reference " + where + " has unknown type '" + f.type_name + "'");
      }
    }
  }
  // supertype cycles
  std::map<std::string, int, std::less<>> state;  // 0 new, 1 active, 2 done
  std::function<void(const Classifier&)> visit = [&](const Classifier& c) {
    int& s = state[c.name];
    if (s == 2) return;
    if (s == 1) throw Error(ErrorCode::CyclicInheritance, "inheritance cycle through " + c.name);
    s = 1;
    for (const auto& sup : c.super_types) visit(*m.find(sup));
    state[c.name] = 2;
  };
  for (const auto& c : m.classifiers) visit(c);
}

}  // namespace

Metamodel load_metamodel(std::string_view xml) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedXml, e.message(), e.line());
  }
  const pt::ptree* package = nullptr;
  for (const auto& [key, child] : tree) {
    if (key == "EPackage" || key.ends_with(":EPackage")) package = &child;
  }
  if (package == nullptr) throw Error(ErrorCode::MalformedXml, "document has no EPackage root");

  Metamodel m;
  m.name = attr(*package, "name");
  m.ns_uri = attr(*package, "nsURI");
  if (m.name.empty() || m.ns_uri.empty()) {
    throw Error(ErrorCode::MissingNamespace, "EPackage must declare both name and nsURI");
  }
  read_package(*package, m);
  validate(m);
  return m;
}

std::vector<Feature> collect_features(const Metamodel& m, const Classifier& cls) {
  std::vector<Feature> out;
  std::set<std::string, std::less<>> seen;
  std::set<std::string, std::less<>> visited;
  std::function<void(const Classifier&)> walk = [&](const Classifier& c) {
    if (!visited.insert(c.name).second) return;
    for (const auto& s : c.super_types) {
      if (const Classifier* sc = m.find(s)) walk(*sc);
    }
    for (const auto& f : c.features) {
      if (seen.insert(f.name).second) out.push_back(f);
    }
  };
  walk(cls);
  return out;
}

std::vector<const Classifier*> direct_subclasses(const Metamodel& m, std::string_view cls) {
  std::vector<const Classifier*> out;
  for (const auto& c : m.classifiers) {
    if (std::find(c.super_types.begin(), c.super_types.end(), cls) != c.super_types.end()) out.push_back(&c);
  }
  return out;
}

std::string_view to_string(ChangeKind kind) noexcept {
  switch (kind) {
    case ChangeKind::ClassifierAdded: return "classifier-added";
    case ChangeKind::ClassifierRemoved: return "classifier-removed";
    case ChangeKind::FeatureAdded: return "feature-added";
    case ChangeKind::FeatureRemoved: return "feature-removed";
    case ChangeKind::FeatureRenamedCandidate: return "feature-renamed-candidate";
    case ChangeKind::BoundChanged: return "bound-changed";
    case ChangeKind::FeatureTypeChanged: return "feature-type-changed";
    case ChangeKind::SupertypeChanged: return "supertype-changed";
    case ChangeKind::AbstractChanged: return "abstract-changed";
    case ChangeKind::LiteralsChanged: return "literals-changed";
  }
  return "unknown";
}

namespace {

std::string bounds(const Feature& f) {
  return std::to_string(f.lower_bound) + ".." + (f.upper_bound == -1 ? std::string("*") : std::to_string(f.upper_bound));
}

const Feature* find_feature(const Classifier& c, std::string_view name) {
  auto it = std::find_if(c.features.begin(), c.features.end(), [&](const Feature& f) { return f.name == name; });
  return it == c.features.end() ? nullptr : &*it;
}

void diff_class(const Classifier& a, const Classifier& b, std::vector<MetamodelChange>& out) {
  if (a.kind != b.kind) {
    out.push_back({ChangeKind::ClassifierRemoved, a.name, {}, {}, "kind changed"});
    out.push_back({ChangeKind::ClassifierAdded, b.name, {}, {}, "kind changed"});
    return;
  }
  if (a.is_abstract != b.is_abstract) {
    out.push_back({ChangeKind::AbstractChanged, a.name, {}, {}, b.is_abstract ? "now abstract" : "now concrete"});
  }
  if (a.super_types != b.super_types) {
    out.push_back({ChangeKind::SupertypeChanged, a.name, {}, {}, {}});
  }
  if (a.literals != b.literals) {
    out.push_back({ChangeKind::LiteralsChanged, a.name, {}, {}, {}});
  }
  std::vector<const Feature*> removed;
  std::vector<const Feature*> added;
  for (const auto& f : a.features) {
    const Feature* g = find_feature(b, f.name);
    if (g == nullptr) {
      removed.push_back(&f);
      continue;
    }
    if (f.kind != g->kind || f.type_name != g->type_name) {
      out.push_back({ChangeKind::FeatureTypeChanged, a.name, f.name, {}, f.type_name + " -> " + g->type_name});
    }
    if (f.lower_bound != g->lower_bound || f.upper_bound != g->upper_bound) {
      out.push_back({ChangeKind::BoundChanged, a.name, f.name, {}, bounds(f) + " -> " + bounds(*g)});
    }
  }
  for (const auto& g : b.features) {
    if (find_feature(a, g.name) == nullptr) added.push_back(&g);
  }
  std::vector<bool> paired(added.size(), false);
  for (const Feature* f : removed) {
    bool renamed = false;
    for (std::size_t i = 0; i < added.size(); ++i) {
      const Feature* g = added[i];
      if (!paired[i] && g->kind == f->kind && g->type_name == f->type_name && g->lower_bound == f->lower_bound &&
          g->upper_bound == f->upper_bound) {
        paired[i] = true;
        renamed = true;
        out.push_back({ChangeKind::FeatureRenamedCandidate, a.name, f->name, g->name, {}});
        break;
      }
    }
    if (!renamed) out.push_back({ChangeKind::FeatureRemoved, a.name, f->name, {}, {}});
  }
  for (std::size_t i = 0; i < added.size(); ++i) {
    if (!paired[i]) out.push_back({ChangeKind::FeatureAdded, a.name, added[i]->name, {}, {}});
  }
}

}  // namespace

std::vector<MetamodelChange> diff_metamodels(const Metamodel& a, const Metamodel& b) {
  std::vector<MetamodelChange> out;
  for (const auto& c : a.classifiers) {
    const Classifier* other = b.find(c.name);
    if (other == nullptr) {
      out.push_back({ChangeKind::ClassifierRemoved, c.name, {}, {}, {}});
    } else {
      diff_class(c, *other, out);
    }
  }
  for (const auto& c : b.classifiers) {
    if (a.find(c.name) == nullptr) out.push_back({ChangeKind::ClassifierAdded, c.name, {}, {}, {}});
  }
  return out;
}

std::string format_change(const MetamodelChange& change) {
  std::string out(to_string(change.kind));
  out += " " + change.classifier;
  if (!change.feature.empty()) out += "." + change.feature;
  if (!change.new_feature.empty()) out += " -> " + change.new_feature;
  if (!change.detail.empty()) out += " (" + change.detail + ")";
  return out;
}

}  // namespace gopt
