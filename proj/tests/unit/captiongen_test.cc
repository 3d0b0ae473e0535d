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

#include "fgovd/captiongen.h"

#include <gtest/gtest.h>

#include "caption_cases.h"
#include "fgovd/errors.h"
#include "fgovd/rng.h"
#include "fgovd/synthdet.h"
#include "fgovd/text.h"
#include "fixtures.h"

namespace fgovd {
namespace {

using testing::Color;
using testing::Material;
using testing::Obj;

// Replays a fixed list of answers, repeating the last one.
class ScriptedClient : public CompletionClient {
 public:
  explicit ScriptedClient(std::vector<std::string> answers)
      : answers_(std::move(answers)) {}
  std::string Complete(const PromptTranscript&) override {
    const std::size_t i = std::min(calls_++, answers_.size() - 1);
    return answers_[i];
  }
  std::string BackendId() const override { return "scripted"; }
  std::size_t calls() const { return calls_; }

 private:
  std::vector<std::string> answers_;
  std::size_t calls_ = 0;
};

class FailingClient : public CompletionClient {
 public:
  std::string Complete(const PromptTranscript&) override {
    throw BackendError("connection refused");
  }
  std::string BackendId() const override { return "down"; }
};

std::string Words(int n) {
  std::string s = "A brown wooden chair";
  for (int i = 4; i < n; ++i) s += " nice";
  return s + ".";
}

TEST(BuildPromptTest, BlackWoodenChairLayout) {
  const auto chair = Obj(1, "chair", {Color("black"), Material("wood")});
  const auto t = BuildPrompt(chair, DefaultInContextExamples());
  ASSERT_EQ(t.size(), 1u + 2 * kInContextExampleCount + 2 + 1);
  EXPECT_EQ(t.turns()[0].role, Role::kSystem);
  for (std::size_t i = 0; i < kInContextExampleCount; ++i) {
    EXPECT_EQ(t.turns()[1 + 2 * i].role, Role::kUser);
    EXPECT_EQ(t.turns()[2 + 2 * i].role, Role::kAssistant);
  }
  EXPECT_EQ(t.turns()[9].text, DefaultPromptStyle().warmup_question);
  EXPECT_EQ(t.turns()[10].role, Role::kAssistant);
  ASSERT_EQ(t.query_index(), t.size() - 1);
  const std::string& query = t.turns().back().text;
  EXPECT_EQ(t.turns().back().role, Role::kUser);
  EXPECT_NE(query.find("chair"), std::string::npos);
  EXPECT_NE(query.find("black"), std::string::npos);
  EXPECT_NE(query.find("wood"), std::string::npos);
  EXPECT_EQ(t.answers_after_query(), 0u);
}

TEST(BuildPromptTest, QueryCarriesParts) {
  const auto mug = Obj(1, "mug", {Color("white")}, {{"handle", {Material("plastic")}}});
  const auto t = BuildPrompt(mug, DefaultInContextExamples());
  const std::string& query = t.turns().back().text;
  EXPECT_NE(query.find("handle"), std::string::npos);
  EXPECT_NE(query.find("plastic"), std::string::npos);
}

TEST(BuildPromptTest, WrongExampleCountIsConfigError) {
  const auto hat = Obj(1, "hat", {Color("blue")});
  EXPECT_THROW(BuildPrompt(hat, {}), ConfigError);
  std::vector<InContextExample> three(DefaultInContextExamples().begin(),
                                      DefaultInContextExamples().begin() + 3);
  EXPECT_THROW(BuildPrompt(hat, three), ConfigError);
}

TEST(BuildPromptTest, ShippedExamplesMatchBuiltIn) {
  const auto loaded = LoadInContextExamples(std::filesystem::path(FGOVD_SOURCE_DIR) /
                                            "core/data/incontext_examples.json");
  ASSERT_EQ(loaded.size(), DefaultInContextExamples().size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].caption, DefaultInContextExamples()[i].caption);
    EXPECT_EQ(SerializeStructure(loaded[i].object),
              SerializeStructure(DefaultInContextExamples()[i].object));
  }
}

TEST(BuildPromptTest, ExampleCaptionsPassChecks) {
  for (const auto& ex : DefaultInContextExamples()) {
    EXPECT_FALSE(CheckCaption(ex.caption, ex.object)) << ex.caption;
  }
}

TEST(DisplayNameTest, UnderscoresBecomeSpaces) {
  EXPECT_EQ(DisplayName("coffee_table"), "coffee table");
}

TEST(CheckCaptionTest, FixtureMapsToListedCodes) {
  const auto chair = testing::CheckFixtureChair();
  for (const auto& c : testing::CheckCodeCases()) {
    const auto issue = CheckCaption(c.text, chair);
    ASSERT_TRUE(issue.has_value()) << c.text;
    EXPECT_EQ(static_cast<int>(issue->code), c.expected_code) << c.text;
  }
}

TEST(CheckCaptionTest, CleanCaptionsPass) {
  for (const auto& c : testing::CleanCaptions()) {
    const auto issue = CheckCaption(c.text, c.obj);
    EXPECT_FALSE(issue.has_value())
        << c.text << " -> " << (issue ? static_cast<int>(issue->code) : -1);
  }
}

TEST(CheckCaptionTest, DefinitionAndNumberExamples) {
  const auto chair = Obj(1, "chair", {});
  EXPECT_EQ(CheckCaption("A chair is a piece of furniture", chair)->code,
            IssueCode::kDefinition);
  EXPECT_EQ(CheckCaption("A chair with 4 legs", chair)->code, IssueCode::kContainsNumber);
}

TEST(CheckCaptionTest, EmptyCaptionMissesObject) {
  for (const char* cat : {"chair", "coffee_table", "x"}) {
    EXPECT_EQ(CheckCaption("", Obj(1, cat, {Color("red")}))->code,
              IssueCode::kMissingObject);
  }
}

TEST(CheckCaptionTest, IssueCarriesTemplateFillers) {
  const auto chair = testing::CheckFixtureChair();
  const auto part = CheckCaption("A brown wooden chair.", chair);
  ASSERT_TRUE(part);
  EXPECT_EQ(part->part_name, "leg");
  EXPECT_EQ(FormatFollowup(DefaultFollowups(), *part),
            "You did not specify that the chair has a leg. Reformulate the caption "
            "with this addition");
  const auto attr = CheckCaption("A brown chair with black legs.", chair);
  ASSERT_TRUE(attr);
  EXPECT_EQ(FormatFollowup(DefaultFollowups(), *attr),
            "Could you specify that the material of the chair is wood?");
}

TEST(CheckCaptionTest, MaxWordsIsConfigurable) {
  const auto chair = Obj(1, "chair", {Color("brown"), Material("wood")});
  EXPECT_FALSE(CheckCaption(Words(60), chair));
  EXPECT_EQ(CheckCaption(Words(61), chair)->code, IssueCode::kTooLong);
  CheckOptions tight;
  tight.max_words = 5;
  EXPECT_EQ(CheckCaption(Words(6), chair, tight)->code, IssueCode::kTooLong);
}

TEST(FollowupsTest, EveryTemplateFillsCompletely) {
  Issue issue{IssueCode::kTooLong, "chair", "leg", "color", "brown"};
  for (std::size_t c = 0; c < kIssueCodeCount; ++c) {
    issue.code = static_cast<IssueCode>(c);
    const std::string text = FormatFollowup(DefaultFollowups(), issue);
    EXPECT_FALSE(text.empty());
    EXPECT_EQ(text.find('{'), std::string::npos) << text;
  }
  EXPECT_EQ(DefaultFollowups()[0].rfind("Your answer was too long.", 0), 0u);
  EXPECT_EQ(DefaultFollowups()[11],
            "You used the word 'single'; reformulate the caption without it");
}

TEST(CreateCaptionTest, CleanFirstAnswerAccepted) {
  const auto chair = Obj(7, "chair", {Color("brown"), Material("wood")});
  ScriptedClient client({"A brown wooden chair."});
  const auto out = CreateCaption(chair, DefaultFollowups(), client,
                                 DefaultInContextExamples());
  ASSERT_TRUE(out.caption);
  EXPECT_EQ(out.caption->text, "A brown wooden chair.");
  EXPECT_EQ(out.caption->source_object_id, 7);
  EXPECT_EQ(out.caption->provenance, Provenance::kGenerated);
  EXPECT_EQ(out.attempts.size(), 1u);
  EXPECT_EQ(client.calls(), 1u);
  EXPECT_EQ(out.transcript.turns().back().text, "A brown wooden chair.");
}

TEST(CreateCaptionTest, LongThenCleanAfterFollowupZero) {
  const auto chair = Obj(7, "chair", {Color("brown"), Material("wood")});
  ScriptedClient client({Words(70), "A brown wooden chair."});
  GenerationOptions options;
  options.n_iterations = 2;
  const auto out = CreateCaption(chair, DefaultFollowups(), client,
                                 DefaultInContextExamples(), options);
  ASSERT_TRUE(out.caption);
  EXPECT_EQ(out.caption->text, "A brown wooden chair.");
  ASSERT_EQ(out.attempts.size(), 2u);
  EXPECT_EQ(out.attempts[0].issue->code, IssueCode::kTooLong);
  const auto& turns = out.transcript.turns();
  const std::size_t q = *out.transcript.query_index();
  ASSERT_EQ(turns.size(), q + 4);
  EXPECT_EQ(turns[q + 1].text, Words(70));
  EXPECT_EQ(turns[q + 2].role, Role::kUser);
  EXPECT_EQ(turns[q + 2].text, DefaultFollowups()[0]);
  EXPECT_EQ(out.transcript.answers_after_query(), 2u);
}

TEST(CreateCaptionTest, SingleIterationAppendsFollowupOnFailure) {
  const auto chair = Obj(7, "chair", {Color("brown"), Material("wood")});
  ScriptedClient client({Words(70), "A brown wooden chair."});
  const auto out = CreateCaption(chair, DefaultFollowups(), client,
                                 DefaultInContextExamples());
  EXPECT_FALSE(out.caption);
  EXPECT_EQ(client.calls(), 1u);
  EXPECT_EQ(out.transcript.turns().back().text, DefaultFollowups()[0]);
}

TEST(CreateCaptionTest, PersistentColonExhaustsIterations) {
  const auto chair = Obj(7, "chair", {Color("brown"), Material("wood")});
  ScriptedClient client({"Chair: brown, wooden."});
  GenerationOptions options;
  options.n_iterations = 3;
  const auto out = CreateCaption(chair, DefaultFollowups(), client,
                                 DefaultInContextExamples(), options);
  EXPECT_FALSE(out.caption);
  ASSERT_EQ(out.attempts.size(), 3u);
  for (const auto& a : out.attempts) EXPECT_EQ(a.issue->code, IssueCode::kColon);
}

TEST(CreateCaptionTest, EnclosingQuotesStripped) {
  const auto hat = Obj(1, "hat", {Color("blue")});
  ScriptedClient client({"  \"A blue hat.\"  "});
  const auto out = CreateCaption(hat, DefaultFollowups(), client,
                                 DefaultInContextExamples());
  ASSERT_TRUE(out.caption);
  EXPECT_EQ(out.caption->text, "A blue hat.");
}

TEST(CreateCaptionTest, ZeroIterationsIsConfigError) {
  const auto hat = Obj(1, "hat", {Color("blue")});
  ScriptedClient client({"A blue hat."});
  GenerationOptions options;
  options.n_iterations = 0;
  EXPECT_THROW(CreateCaption(hat, DefaultFollowups(), client,
                             DefaultInContextExamples(), options),
               ConfigError);
}

TEST(CreateCaptionTest, TransportFailureIsBackendError) {
  const auto hat = Obj(1, "hat", {Color("blue")});
  FailingClient client;
  EXPECT_THROW(CreateCaption(hat, DefaultFollowups(), client,
                             DefaultInContextExamples()),
               BackendError);
}

TEST(CreateCaptionTest, ReproducibleWithDeterministicBackend) {
  const auto chair = testing::CheckFixtureChair();
  GenerationOptions options;
  options.n_iterations = 3;
  ScriptedClient a({"A chair: brown.", "A brown chair.", "A brown wooden chair with black legs."});
  ScriptedClient b({"A chair: brown.", "A brown chair.", "A brown wooden chair with black legs."});
  const auto ra = CreateCaption(chair, DefaultFollowups(), a, DefaultInContextExamples(), options);
  const auto rb = CreateCaption(chair, DefaultFollowups(), b, DefaultInContextExamples(), options);
  EXPECT_EQ(ra.transcript, rb.transcript);
  ASSERT_TRUE(ra.caption);
  EXPECT_EQ(*ra.caption, *rb.caption);
}

TEST(PropagateCaptionsTest, SecondChairInheritsCaption) {
  ImageRecord img{1, 100, 100, "", {Obj(1, "chair", {Color("red")}), Obj(2, "chair", {Color("blue")})}};
  CaptionMap caps = {{1, Caption{"A red chair.", 1, 1, Provenance::kGenerated, false}}};
  const auto out = PropagateCaptions(img, caps);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.at(2).text, "A red chair.");
  EXPECT_EQ(out.at(2).provenance, Provenance::kPropagated);
  EXPECT_TRUE(out.at(2).review);
  EXPECT_EQ(out.at(2).source_object_id, 1);
  EXPECT_EQ(out.at(1), caps.at(1));
}

TEST(PropagateCaptionsTest, AllCaptionedIsIdentity) {
  ImageRecord img{1, 100, 100, "", {Obj(1, "chair", {}), Obj(2, "table", {})}};
  CaptionMap caps = {{1, Caption{"A chair.", 1, 1}}, {2, Caption{"A table.", 2, 1}}};
  EXPECT_EQ(PropagateCaptions(img, caps), caps);
}

TEST(PropagateCaptionsTest, NeverCrossesCategories) {
  ImageRecord img{1, 100, 100, "", {Obj(1, "chair", {}), Obj(2, "table", {})}};
  CaptionMap caps = {{1, Caption{"A chair.", 1, 1}}};
  const auto out = PropagateCaptions(img, caps);
  EXPECT_EQ(out.size(), 1u);
  EXPECT_FALSE(out.contains(2));
}

TEST(PropagateCaptionsTest, LowestIdSourceWins) {
  ImageRecord img{1, 100, 100, "",
                  {Obj(5, "cup", {}), Obj(3, "cup", {}), Obj(9, "cup", {})}};
  CaptionMap caps = {{5, Caption{"A five cup.", 5, 1}}, {3, Caption{"A three cup.", 3, 1}}};
  EXPECT_EQ(PropagateCaptions(img, caps).at(9).text, "A three cup.");
}

TEST(TemplateCaptionTest, GeneratedObjectsPassChecks) {
  const auto corpus = MakeSyntheticCorpus({200, 3, 0.15, 5}, DefaultTaxonomy());
  std::size_t checked = 0;
  for (const auto& img : corpus.images) {
    for (const auto& obj : img.objects) {
      const std::string& caption = corpus.captions.at(obj.object_id).text;
      EXPECT_FALSE(CheckCaption(caption, obj)) << caption;
      ++checked;
    }
  }
  EXPECT_GT(checked, 300u);
}

TEST(TemplateCaptionTest, KnownRendering) {
  const auto lamp = Obj(4, "lamp", {},
                        {{"shade", {Color("white"), Material("plastic")}},
                         {"pipe", {Color("grey"), Material("metal")}}});
  EXPECT_EQ(RenderTemplateCaption(lamp),
            "A lamp with a white plastic shade and a grey metal pipe.");
  EXPECT_EQ(RenderTemplateCaption(Obj(1, "hat", {Color("blue")})), "A blue hat.");
}

TEST(AcceptedCaptionProperty, MentionsEveryAttributeValue) {
  Rng rng(77);
  const auto corpus = MakeSyntheticCorpus({80, 3, 0.0, 8}, DefaultTaxonomy());
  for (const auto& img : corpus.images) {
    for (const auto& obj : img.objects) {
      ScriptedClient client({RenderTemplateCaption(obj)});
      const auto out = CreateCaption(obj, DefaultFollowups(), client,
                                     DefaultInContextExamples());
      ASSERT_TRUE(out.caption);
      for (const auto& slot : AttributeSlots(obj)) {
        EXPECT_TRUE(text::FindWord(out.caption->text, slot.value)) << slot.value;
      }
    }
  }
}

}  // namespace
}  // namespace fgovd
