#include <gtest/gtest.h>

#include <algorithm>

#include "gopt/error.hpp"
#include "gopt/metamodel.hpp"
#include "support.hpp"

using namespace gopt;

namespace {

std::string package(const std::string& body, const std::string& attrs = R"(name="p" nsURI="http://p")") {
  return R"(<?xml version="1.0" encoding="UTF-8"?>
<ecore:EPackage xmi:version="2.0" xmlns:xmi="http://www.omg.org/XMI"
    xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"
    xmlns:ecore="http://www.eclipse.org/emf/2002/Ecore" )" +
         attrs + ">\n" + body + "</ecore:EPackage>\n";
}

const char* kEString = "ecore:EDataType http://www.eclipse.org/emf/2002/Ecore#//EString";

std::string node_stmt_package() {
  return package(R"(
  <eClassifiers xsi:type="ecore:EClass" name="NodeStmt">
    <eStructuralFeatures xsi:type="ecore:EReference" name="node" eType="#//NodeId"/>
    <eStructuralFeatures xsi:type="ecore:EReference" name="attrLists" upperBound="-1" eType="#//AttrList" containment="true"/>
  </eClassifiers>
  <eClassifiers xsi:type="ecore:EClass" name="NodeId"/>
  <eClassifiers xsi:type="ecore:EClass" name="AttrList"/>
)");
}

ErrorCode code_of(const std::string& xml) {
  try {
    load_metamodel(xml);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::Io;
}

std::vector<ChangeKind> kinds(const std::vector<MetamodelChange>& changes) {
  std::vector<ChangeKind> out;
  for (const auto& c : changes) out.push_back(c.kind);
  return out;
}

}  // namespace

TEST(LoadMetamodel, NodeStmtFeatures) {
  const Metamodel m = load_metamodel(node_stmt_package());
  EXPECT_EQ(m.name, "p");
  EXPECT_EQ(m.ns_uri, "http://p");
  const Classifier* c = m.find("NodeStmt");
  ASSERT_NE(c, nullptr);
  ASSERT_EQ(c->features.size(), 2u);
  EXPECT_EQ(c->features[0], (Feature{"node", FeatureKind::CrossReference, "NodeId", 0, 1}));
  EXPECT_EQ(c->features[1], (Feature{"attrLists", FeatureKind::Containment, "AttrList", 0, -1}));
  EXPECT_TRUE(c->features[1].many());
}

TEST(LoadMetamodel, EmptyPackage) {
  const Metamodel m = load_metamodel(package(""));
  EXPECT_TRUE(m.classifiers.empty());
}

TEST(LoadMetamodel, DocumentOrderIsPreserved) {
  const Metamodel m = load_metamodel(gopt::testing::read_data("metamodels/dot.ecore"));
  std::vector<std::string> names;
  for (const auto& c : m.classifiers) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"GraphvizModel", "Graph", "Stmt", "NodeStmt", "EdgeStmtNode", "EdgeRhs",
                                             "AttrList", "Attribute", "NodeId", "GraphType", "EdgeOp"}));
  const Classifier* e = m.find("GraphType");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->kind, ClassifierKind::Enum);
  EXPECT_EQ(e->literals, (std::vector<std::string>{"graph", "digraph"}));
}

TEST(LoadMetamodel, DefaultsAndDataTypes) {
  const Metamodel m = load_metamodel(gopt::testing::read_data("metamodels/library.ecore"));
  const Classifier* item = m.find("Item");
  ASSERT_NE(item, nullptr);
  EXPECT_TRUE(item->is_abstract);
  EXPECT_EQ(item->features[1].type_name, "Date");
  EXPECT_EQ(m.find("Date")->kind, ClassifierKind::DataType);
  EXPECT_EQ(m.find("Book")->super_types, std::vector<std::string>{"Item"});
}

TEST(LoadMetamodel, Errors) {
  EXPECT_EQ(code_of("<not xml"), ErrorCode::MalformedXml);
  EXPECT_EQ(code_of(package("", R"(name="p")")), ErrorCode::MissingNamespace);
  EXPECT_EQ(code_of(package(R"(<eClassifiers xsi:type="ecore:EClass" name="A">
    <eStructuralFeatures xsi:type="ecore:EReference" name="b" eType="#//Missing"/></eClassifiers>)")),
            ErrorCode::UnresolvedType);
  EXPECT_EQ(code_of(package(R"(<eClassifiers xsi:type="ecore:EClass" name="A">
    <eStructuralFeatures xsi:type="ecore:EReference" name="b" eType="#//A" eOpposite="#//A/b"/></eClassifiers>)")),
            ErrorCode::BidirectionalReference);
  EXPECT_EQ(code_of(package(R"(<eClassifiers xsi:type="ecore:EClass" name="A"/>
    <eClassifiers xsi:type="ecore:EClass" name="A"/>)")),
            ErrorCode::DuplicateClassifier);
  EXPECT_EQ(code_of(package(std::string(R"(<eClassifiers xsi:type="ecore:EClass" name="A">
    <eStructuralFeatures xsi:type="ecore:EAttribute" name="x" lowerBound="2" upperBound="1" eType=")") +
                            kEString + R"("/></eClassifiers>)")),
            ErrorCode::InvalidBounds);
  EXPECT_EQ(code_of(package(R"(<eClassifiers xsi:type="ecore:EClass" name="A" eSuperTypes="#//B"/>
    <eClassifiers xsi:type="ecore:EClass" name="B" eSuperTypes="#//A"/>)")),
            ErrorCode::CyclicInheritance);
}

TEST(CollectFeatures, InheritedFirstDeduplicated) {
  const Metamodel m = load_metamodel(package(std::string(R"(
  <eClassifiers xsi:type="ecore:EClass" name="Named" abstract="true">
    <eStructuralFeatures xsi:type="ecore:EAttribute" name="name" eType=")") + kEString + R"("/>
  </eClassifiers>
  <eClassifiers xsi:type="ecore:EClass" name="Tagged" abstract="true" eSuperTypes="#//Named">
    <eStructuralFeatures xsi:type="ecore:EAttribute" name="tag" eType=")" + kEString + R"("/>
  </eClassifiers>
  <eClassifiers xsi:type="ecore:EClass" name="Thing" eSuperTypes="#//Named #//Tagged">
    <eStructuralFeatures xsi:type="ecore:EAttribute" name="size" eType=")" + kEString + R"("/>
  </eClassifiers>
)"));
  std::vector<std::string> names;
  for (const auto& f : collect_features(m, *m.find("Thing"))) names.push_back(f.name);
  EXPECT_EQ(names, (std::vector<std::string>{"name", "tag", "size"}));
  const auto subs = direct_subclasses(m, "Named");
  ASSERT_EQ(subs.size(), 2u);
  EXPECT_EQ(subs[0]->name, "Tagged");
}

TEST(DiffMetamodels, IdenticalIsEmpty) {
  const Metamodel m = load_metamodel(gopt::testing::read_data("metamodels/dot.ecore"));
  EXPECT_TRUE(diff_metamodels(m, m).empty());
}

TEST(DiffMetamodels, RenameCandidate) {
  const Metamodel v1 = load_metamodel(gopt::testing::read_data("evolution/qvto_v1.ecore"));
  const Metamodel v2 = load_metamodel(gopt::testing::read_data("evolution/qvto_v2.ecore"));
  const auto changes = diff_metamodels(v1, v2);
  ASSERT_EQ(changes.size(), 1u);
  EXPECT_EQ(changes[0].kind, ChangeKind::FeatureRenamedCandidate);
  EXPECT_EQ(changes[0].classifier, "VarParameter");
  EXPECT_EQ(changes[0].feature, "bindParameter");
  EXPECT_EQ(changes[0].new_feature, "representedParameter");
}

TEST(DiffMetamodels, BoundChanged) {
  auto with_lower = [](int lower) {
    return load_metamodel(package(std::string(R"(<eClassifiers xsi:type="ecore:EClass" name="A">
      <eStructuralFeatures xsi:type="ecore:EAttribute" name="x" lowerBound=")") + std::to_string(lower) +
                                  R"(" eType=")" + kEString + R"("/></eClassifiers>)"));
  };
  const auto changes = diff_metamodels(with_lower(1), with_lower(0));
  EXPECT_EQ(kinds(changes), std::vector<ChangeKind>{ChangeKind::BoundChanged});
}

TEST(DiffMetamodels, MirroredAddRemove) {
  const Metamodel a = load_metamodel(package(R"(<eClassifiers xsi:type="ecore:EClass" name="A"/>)"));
  const Metamodel b = load_metamodel(package(R"(<eClassifiers xsi:type="ecore:EClass" name="A"/>
    <eClassifiers xsi:type="ecore:EClass" name="B"/>)"));
  EXPECT_EQ(kinds(diff_metamodels(a, b)), std::vector<ChangeKind>{ChangeKind::ClassifierAdded});
  EXPECT_EQ(kinds(diff_metamodels(b, a)), std::vector<ChangeKind>{ChangeKind::ClassifierRemoved});
  EXPECT_NE(format_change(diff_metamodels(a, b)[0]).find("B"), std::string::npos);
}
