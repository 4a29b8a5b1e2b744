// The catalog: construction, documented facts and parameter errors.

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ged/zoo.hpp"

using namespace ged;

TEST(Zoo, EveryMetricFactHoldsAtProbePoints) {
  for (const auto& name : zoo_metric_names()) {
    const ZooEntry e = build_entry(name);
    EXPECT_TRUE(e.is_metric()) << name;
    EXPECT_FALSE(e.facts.empty()) << name;
    for (const auto& c : check_facts(e)) EXPECT_TRUE(c.ok) << name << ": " << c.fact.describe() << " error " << c.max_error;
  }
}

TEST(Zoo, FactsHoldInHigherDimensions) {
  for (const char* name : {"flat", "fubini-study", "poincare-disc", "perturbed", "euclidean", "round-sphere", "hyperbolic"}) {
    const ZooEntry e = build_entry(name, {.dim = 3});
    for (const auto& c : check_facts(e, 30)) EXPECT_TRUE(c.ok) << name << ": " << c.fact.describe();
  }
}

TEST(Zoo, EveryMapFactHolds) {
  for (const auto& name : zoo_map_names()) {
    ZooParams p;
    if (name == "projection" || name == "linear") p.dim = 2;
    const ZooEntry e = build_entry(name, p);
    EXPECT_FALSE(e.is_metric());
    for (const auto& c : check_facts(e)) EXPECT_TRUE(c.ok) << name << ": " << c.fact.describe();
  }
}

TEST(Zoo, DocumentedConstants) {
  auto value = [](const std::string& name, CatalogFact::Kind k) {
    for (const auto& f : catalog_facts(name))
      if (f.kind == k) return f.value;
    return -99.0;
  };
  EXPECT_EQ(value("fubini-study", CatalogFact::Kind::hsc), 2.0);
  EXPECT_EQ(value("poincare-disc", CatalogFact::Kind::hsc), -2.0);
  EXPECT_EQ(value("round-sphere", CatalogFact::Kind::sectional), 1.0);
  EXPECT_EQ(value("hyperbolic", CatalogFact::Kind::sectional), -1.0);
  EXPECT_NE(value("poincare-disc", CatalogFact::Kind::kahler), -99.0);
  EXPECT_NE(value("euclidean", CatalogFact::Kind::zero_curvature), -99.0);
}

TEST(Zoo, RealifiedSurfaceKeepsItsCurvature) {
  const ZooEntry e = build_entry("poincare-disc", {.realify = true});
  EXPECT_EQ(e.kind, ZooKind::riemannian_metric);
  ASSERT_EQ(e.facts.size(), 1u);
  EXPECT_EQ(e.facts[0].kind, CatalogFact::Kind::sectional);
  EXPECT_EQ(e.facts[0].value, -2.0);
  for (const auto& c : check_facts(e)) EXPECT_TRUE(c.ok);
}

TEST(Zoo, RealifiedMapIsPluriharmonic) {
  const ZooEntry e = build_entry("linear", {.dim = 2, .realify = true});
  EXPECT_FALSE(e.map().target_complex);
  EXPECT_EQ(e.map().target_dim, 4);
  for (const auto& c : check_facts(e)) EXPECT_TRUE(c.ok) << c.fact.describe();
}

TEST(Zoo, TorusCarriesCompactnessMetadata) {
  const ZooEntry e = build_entry("torus", {.dim = 2});
  EXPECT_TRUE(e.compact);
  EXPECT_FALSE(e.fundamental_domain.empty());
  EXPECT_FALSE(build_entry("flat").compact);
}

TEST(Zoo, ParameterErrors) {
  EXPECT_THROW(build_entry("quintic"), ZooError);
  EXPECT_THROW(catalog_facts("nothing"), ZooError);
  EXPECT_THROW(build_entry("hopf", {.inner = 0.0}), ZooError);
  EXPECT_THROW(build_entry("hopf", {.radius = 0.4, .inner = 0.5}), ZooError);
  EXPECT_THROW(build_entry("poincare-disc", {.radius = 1.0}), ZooError);
  EXPECT_THROW(build_entry("hyperbolic", {.radius = 1.5}), ZooError);
  EXPECT_THROW(build_entry("power", {.dim = 2}), ZooError);
  EXPECT_THROW(build_entry("euclidean", {.realify = true}), ZooError);
  EXPECT_THROW(build_entry("real-part", {.realify = true}), ZooError);
  EXPECT_THROW(build_entry("flat").map(), std::bad_variant_access);
  EXPECT_THROW(build_entry("identity").target(), ZooError);
}

TEST(Zoo, HopfAnnulusExcludesTheOrigin) {
  const auto h = build_entry("hopf").hermitian();
  const std::vector<Cplx<double>> inside = {Cplx<double>(0.1), Cplx<double>(0.1)};
  EXPECT_THROW(hermitian_jet(h, inside), BoundaryError);
}
