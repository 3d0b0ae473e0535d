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

#ifndef FGOVD_COMPLETION_CLIENT_H_
#define FGOVD_COMPLETION_CLIENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fgovd/captiongen.h"

namespace fgovd {

enum class BackendKind {
  kOpenAiChat,      // POST {model, messages[]} -> /choices/0/message/content
  kTextCompletion,  // POST {model, prompt} with role-prefixed transcript
  kReplay,          // canned answers, no network
};

struct PromptFormat {
  std::string system_prefix = "<|system|>";
  std::string user_prefix = "<|prompter|>";
  std::string assistant_prefix = "<|assistant|>";
  std::string end_of_turn = "</s>";
};

// Backend profile document (JSON). Every field but "kind" is optional:
//   {"name", "kind": "openai-chat" | "text-completion" | "replay",
//    "base_url", "path", "model", "temperature", "max_tokens", "seed",
//    "timeout_seconds", "headers": {..}, "api_key_env", "response_pointer",
//    "stop": [..], "prompt_format": {..},
//    "responses": {"<category>" | "default": ["answer 1", "answer 2", ..]},
//    "synthesize": bool}
struct BackendProfile {
  std::string name = "default";
  BackendKind kind = BackendKind::kReplay;
  std::string base_url = "http://127.0.0.1:8080";
  std::string path;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 128;
  std::optional<std::uint64_t> seed = 0;
  int timeout_seconds = 60;
  std::map<std::string, std::string> headers;
  std::string api_key_env;
  std::string response_pointer;
  std::vector<std::string> stop;
  PromptFormat prompt_format;
  // Replay backend: answers per queried category, indexed by attempt.
  std::map<std::string, std::vector<std::string>> responses;
  // Replay backend: fall back to RenderTemplateCaption of the query.
  bool synthesize = false;
};

BackendProfile ParseBackendProfile(std::string_view document,
                                   std::string_view source_name = "<profile>");
BackendProfile LoadBackendProfile(const std::filesystem::path& path);

// Role-prefixed single-string rendering for text-completion endpoints; ends
// with the assistant prefix so the model continues as the assistant.
std::string RenderTranscript(const PromptTranscript& transcript,
                             const PromptFormat& format);

// Recovers the queried object from a transcript built by BuildPrompt.
std::optional<StructuredObject> QueriedObject(const PromptTranscript& transcript);

class HttpCompletionClient : public CompletionClient {
 public:
  explicit HttpCompletionClient(BackendProfile profile);
  std::string Complete(const PromptTranscript& transcript) override;
  std::string BackendId() const override;

  // Request body sent for a transcript; exposed for inspection.
  std::string RequestBody(const PromptTranscript& transcript) const;

 private:
  BackendProfile profile_;
};

// Deterministic and stateless: the answer depends only on the transcript,
// so concurrent use across objects is safe.
class ReplayCompletionClient : public CompletionClient {
 public:
  explicit ReplayCompletionClient(BackendProfile profile);
  std::string Complete(const PromptTranscript& transcript) override;
  std::string BackendId() const override;

 private:
  BackendProfile profile_;
};

std::unique_ptr<CompletionClient> MakeCompletionClient(
    const BackendProfile& profile);

}  // namespace fgovd

#endif  // FGOVD_COMPLETION_CLIENT_H_
