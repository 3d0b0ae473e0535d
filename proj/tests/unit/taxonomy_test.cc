/* Copyright 2026 The fgovd Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "fgovd/taxonomy.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include <gtest/gtest.h>

#include "fgovd/errors.h"
#include "fgovd/rng.h"
#include "generators.h"
#include "fixtures.h"

namespace fgovd {
namespace {

using testing::Color;
using testing::Material;
using testing::Obj;
using testing::Pattern;
using testing::Transparency;

TEST(DefaultTaxonomyTest, TableSizes) {
  const auto& tax = DefaultTaxonomy();
  EXPECT_EQ(tax.values(AttrType::kColor).size(), 29u);
  EXPECT_EQ(tax.values(AttrType::kMaterial).size(), 14u);
  EXPECT_EQ(tax.values(AttrType::kPattern).size(), 9u);
  EXPECT_EQ(tax.values(AttrType::kTransparency).size(), 3u);
}

TEST(DefaultTaxonomyTest, ContainsListedColors) {
  const auto& tax = DefaultTaxonomy();
  EXPECT_TRUE(tax.Contains(AttrType::kColor, "dark blue"));
  EXPECT_TRUE(tax.Contains(AttrType::kColor, "light yellow"));
  EXPECT_TRUE(tax.Contains(AttrType::kColor, "Dark Blue"));
  EXPECT_FALSE(tax.Contains(AttrType::kColor, "chartreuse"));
}

TEST(DefaultTaxonomyTest, TransparencyAndNegativesOnly) {
  const auto& tax = DefaultTaxonomy();
  const std::vector<std::string> expected = {"opaque", "translucent", "transparent"};
  EXPECT_EQ(tax.values(AttrType::kTransparency), expected);
  EXPECT_TRUE(tax.IsNegativesOnly(AttrType::kTransparency, "opaque"));
  EXPECT_TRUE(tax.IsNegativesOnly(AttrType::kPattern, "plain"));
  EXPECT_FALSE(tax.IsNegativesOnly(AttrType::kPattern, "striped"));
  EXPECT_FALSE(tax.IsNegativesOnly(AttrType::kColor, "black"));
}

TEST(DefaultTaxonomyTest, ValuesLowercaseUniqueNonEmpty) {
  const auto& tax = DefaultTaxonomy();
  for (AttrType t : kAllAttrTypes) {
    const auto& v = tax.values(t);
    std::set<std::string> seen(v.begin(), v.end());
    EXPECT_EQ(seen.size(), v.size());
    for (const auto& s : v) {
      EXPECT_FALSE(s.empty());
      EXPECT_TRUE(std::none_of(s.begin(), s.end(), [](char c) { return std::isupper(c); }));
    }
  }
}

TEST(DefaultTaxonomyTest, ValuesByLengthPutsCompoundsFirst) {
  const auto& order = DefaultTaxonomy().values_by_length();
  const auto pos = [&](const std::string& v) {
    return std::find(order.begin(), order.end(), v) - order.begin();
  };
  EXPECT_LT(pos("dark blue"), pos("blue"));
  EXPECT_LT(pos("light brown"), pos("brown"));
}

TEST(ParseTaxonomyTest, RoundTripsDefault) {
  const auto& tax = DefaultTaxonomy();
  const AttributeTaxonomy again = ParseTaxonomy(tax.ToJson());
  for (AttrType t : kAllAttrTypes) {
    EXPECT_EQ(again.values(t), tax.values(t));
    EXPECT_EQ(again.negatives_only_values(t), tax.negatives_only_values(t));
  }
  EXPECT_EQ(again.Fingerprint(), tax.Fingerprint());
}

TEST(ParseTaxonomyTest, ShippedDataFileMatchesBuiltIn) {
  const auto path = std::filesystem::path(FGOVD_SOURCE_DIR) / "core/data/taxonomy_default.json";
  EXPECT_EQ(LoadTaxonomy(path).Fingerprint(), DefaultTaxonomy().Fingerprint());
}

TEST(ParseTaxonomyTest, EmptyPathLoadsDefault) {
  EXPECT_EQ(LoadTaxonomy("").Fingerprint(), DefaultTaxonomy().Fingerprint());
}

TEST(ParseTaxonomyTest, DuplicateValueIsValidationError) {
  const std::string doc = R"({"version": "t", "color": ["blue", "red", "blue"],
    "material": ["wood"], "pattern": ["plain"], "transparency": ["opaque"]})";
  EXPECT_THROW(ParseTaxonomy(doc), ValidationError);
}

TEST(ParseTaxonomyTest, MalformedDocumentReportsLine) {
  const std::string doc = "{\n  \"version\": \"t\",\n  \"color\": [\"blue\",,]\n}";
  try {
    ParseTaxonomy(doc, "bad.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json:3"), std::string::npos) << e.what();
  }
}

TEST(ParseTaxonomyTest, WrongFieldTypeNamesField) {
  const std::string doc = R"({"version": "t", "color": "blue", "material": [],
    "pattern": [], "transparency": []})";
  try {
    ParseTaxonomy(doc, "t.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("color"), std::string::npos) << e.what();
  }
}

TEST(ParseTaxonomyTest, UppercaseValuesAreLowered) {
  const std::string doc = R"({"version": "t", "color": ["Blue"], "material": ["Wood"],
    "pattern": ["plain"], "transparency": ["opaque"],
    "negatives_only": {"pattern": ["plain"]}})";
  const auto tax = ParseTaxonomy(doc);
  EXPECT_EQ(tax.values(AttrType::kColor).front(), "blue");
  EXPECT_TRUE(tax.IsNegativesOnly(AttrType::kPattern, "plain"));
}

TEST(AttributeSlotsTest, ObjectThenPartsInOrder) {
  const auto o = Obj(1, "knife", {Color("black")},
                     {{"handle", {Material("plastic")}}, {"blade", {Material("metal")}}});
  const auto slots = AttributeSlots(o);
  ASSERT_EQ(slots.size(), 3u);
  EXPECT_TRUE(slots[0].on_object());
  EXPECT_EQ(slots[1].part, "handle");
  EXPECT_EQ(slots[2].value, "metal");
}

TEST(SimplifyObjectTest, CarAllPartsBlackHoistsToObject) {
  const auto car = Obj(1, "car", {},
                       {{"hood", {Color("black")}},
                        {"roof", {Color("black")}},
                        {"fender", {Color("black")}},
                        {"bumper", {Color("black")}}});
  const auto s = SimplifyObject(car, DefaultTaxonomy());
  EXPECT_EQ(s.attributes, std::vector<Attribute>{Color("black")});
  EXPECT_TRUE(s.parts.empty());
}

TEST(SimplifyObjectTest, PlainOnlyObjectIsDegenerate) {
  const auto o = Obj(1, "bag", {Pattern("plain")});
  EXPECT_THROW(SimplifyObject(o, DefaultTaxonomy()), DegenerateObjectError);
}

TEST(SimplifyObjectTest, KnifeHoistsSharedColorKeepsMaterials) {
  const auto knife = Obj(1, "knife", {},
                         {{"handle", {Color("black"), Material("plastic")}},
                          {"blade", {Color("black"), Material("metal")}}});
  const auto s = SimplifyObject(knife, DefaultTaxonomy());
  EXPECT_EQ(s.attributes, std::vector<Attribute>{Color("black")});
  ASSERT_EQ(s.parts.size(), 2u);
  EXPECT_EQ(s.parts[0].attributes, std::vector<Attribute>{Material("plastic")});
  EXPECT_EQ(s.parts[1].attributes, std::vector<Attribute>{Material("metal")});
}

TEST(SimplifyObjectTest, SinglePartIsNotHoisted) {
  const auto mug = Obj(1, "mug", {Color("white")}, {{"handle", {Color("black")}}});
  const auto s = SimplifyObject(mug, DefaultTaxonomy());
  EXPECT_EQ(s, mug);
}

TEST(SimplifyObjectTest, StripsOpaqueAndDropsEmptiedParts) {
  const auto o = Obj(1, "lamp", {Color("white"), Transparency("opaque")},
                     {{"shade", {Transparency("opaque")}}, {"pipe", {Color("grey")}}});
  const auto s = SimplifyObject(o, DefaultTaxonomy());
  EXPECT_EQ(s.attributes, std::vector<Attribute>{Color("white")});
  ASSERT_EQ(s.parts.size(), 1u);
  EXPECT_EQ(s.parts[0].name, "pipe");
}

TEST(SimplifyObjectTest, UnknownValueThrows) {
  const auto o = Obj(1, "hat", {Color("chartreuse")});
  EXPECT_THROW(SimplifyObject(o, DefaultTaxonomy()), ValidationError);
}

TEST(ValidateObjectTest, ValidChairHasNoViolations) {
  const auto chair = Obj(1, "chair", {Color("brown"), Material("wood")});
  EXPECT_TRUE(ValidateObject(chair, DefaultTaxonomy(), ImageBounds{640, 480}).ok());
}

TEST(ValidateObjectTest, ZeroWidthIsDegenerateBbox) {
  auto chair = Obj(1, "chair", {Color("brown")});
  chair.bbox.w = 0;
  const auto r = ValidateObject(chair, DefaultTaxonomy());
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].code, "degenerate bbox");
}

TEST(ValidateObjectTest, UnknownColorNamesType) {
  const auto hat = Obj(1, "hat", {Color("chartreuse")});
  const auto r = ValidateObject(hat, DefaultTaxonomy());
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].code, "value not in taxonomy[color]");
}

TEST(ValidateObjectTest, OutOfBoundsAndEmptyPart) {
  auto o = Obj(1, "mug", {Color("red")}, {{"handle", {}}}, {600, 10, 100, 10});
  const auto r = ValidateObject(o, DefaultTaxonomy(), ImageBounds{640, 480});
  std::set<std::string> codes;
  for (const auto& v : r.violations) codes.insert(v.code);
  EXPECT_TRUE(codes.contains("bbox out of bounds"));
  EXPECT_TRUE(codes.contains("empty part"));
}

// Property tests over random raw objects.

class SimplifyPropertyTest : public ::testing::Test {
 protected:
  template <typename Fn>
  void ForRandomObjects(Fn&& fn) {
    Rng rng(20240611);
    std::size_t checked = 0;
    for (int i = 0; i < 3000; ++i) {
      const auto raw = testing::RandomRawObject(rng, DefaultTaxonomy());
      StructuredObject s;
      try {
        s = SimplifyObject(raw, DefaultTaxonomy());
      } catch (const DegenerateObjectError&) {
        continue;
      }
      fn(raw, s);
      ++checked;
    }
    EXPECT_GT(checked, 1000u);
  }
};

std::multiset<Attribute> Usable(const std::vector<Attribute>& attrs) {
  std::multiset<Attribute> out;
  for (const auto& a : attrs) {
    if (!DefaultTaxonomy().IsNegativesOnly(a.type, a.value)) out.insert(a);
  }
  return out;
}

TEST_F(SimplifyPropertyTest, Idempotent) {
  ForRandomObjects([](const StructuredObject&, const StructuredObject& s) {
    EXPECT_EQ(SimplifyObject(s, DefaultTaxonomy()), s);
  });
}

TEST_F(SimplifyPropertyTest, NeverInventsValues) {
  ForRandomObjects([](const StructuredObject& raw, const StructuredObject& s) {
    std::set<Attribute> input;
    for (const auto& a : Usable(raw.attributes)) input.insert(a);
    for (const auto& p : raw.parts) {
      for (const auto& a : Usable(p.attributes)) input.insert(a);
    }
    for (const auto& slot : AttributeSlots(s)) {
      EXPECT_TRUE(input.contains(Attribute{slot.type, slot.value}));
      EXPECT_FALSE(DefaultTaxonomy().IsNegativesOnly(slot.type, slot.value));
    }
  });
}

TEST_F(SimplifyPropertyTest, HoistingPreservesPartSemantics) {
  ForRandomObjects([](const StructuredObject& raw, const StructuredObject& s) {
    for (const Part& original : raw.parts) {
      std::set<Attribute> covered(s.attributes.begin(), s.attributes.end());
      for (const Part& p : s.parts) {
        if (p.name == original.name) covered.insert(p.attributes.begin(), p.attributes.end());
      }
      for (const auto& a : Usable(original.attributes)) {
        EXPECT_TRUE(covered.contains(a)) << original.name << " lost " << a.value;
      }
    }
  });
}

TEST_F(SimplifyPropertyTest, SatisfiesObjectInvariants) {
  ForRandomObjects([](const StructuredObject&, const StructuredObject& s) {
    EXPECT_TRUE(ValidateObject(s, DefaultTaxonomy()).ok());
    EXPECT_FALSE(AttributeSlots(s).empty());
  });
}

}  // namespace
}  // namespace fgovd
