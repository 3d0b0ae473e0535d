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

#include "fgovd/completion_client.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "httplib.h"
#include "json.hpp"

#include "fgovd/errors.h"
#include "structure_json.h"

namespace fgovd {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<BackendKind> ParseKind(std::string_view s) {
  if (s == "openai-chat") return BackendKind::kOpenAiChat;
  if (s == "text-completion") return BackendKind::kTextCompletion;
  if (s == "replay" || s == "fake") return BackendKind::kReplay;
  return std::nullopt;
}

std::string_view KindName(BackendKind k) {
  switch (k) {
    case BackendKind::kOpenAiChat:
      return "openai-chat";
    case BackendKind::kTextCompletion:
      return "text-completion";
    case BackendKind::kReplay:
      return "replay";
  }
  return "replay";
}

}  // namespace

BackendProfile ParseBackendProfile(std::string_view document,
                                   std::string_view source_name) {
  const std::string src(source_name);
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}@byte {}", src, e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError(src, "profile must be an object");
  BackendProfile p;
  try {
    const auto kind = ParseKind(doc.at("kind").get<std::string>());
    if (!kind) throw ParseError(src + ": field 'kind'", "unknown backend kind");
    p.kind = *kind;
    p.name = doc.value("name", std::string(KindName(p.kind)));
    p.base_url = doc.value("base_url", p.base_url);
    p.path = doc.value("path", std::string());
    if (p.path.empty()) {
      p.path = p.kind == BackendKind::kOpenAiChat ? "/v1/chat/completions"
                                                  : "/v1/completions";
    }
    p.model = doc.value("model", std::string());
    p.temperature = doc.value("temperature", 0.0);
    p.max_tokens = doc.value("max_tokens", 128);
    if (doc.contains("seed")) {
      if (doc["seed"].is_null()) {
        p.seed.reset();
      } else {
        p.seed = doc["seed"].get<std::uint64_t>();
      }
    }
    p.timeout_seconds = doc.value("timeout_seconds", 60);
    if (doc.contains("headers")) {
      p.headers = doc["headers"].get<std::map<std::string, std::string>>();
    }
    p.api_key_env = doc.value("api_key_env", std::string());
    p.response_pointer = doc.value("response_pointer", std::string());
    if (p.response_pointer.empty()) {
      p.response_pointer = p.kind == BackendKind::kOpenAiChat
                               ? "/choices/0/message/content"
                               : "/choices/0/text";
    }
    if (doc.contains("stop")) p.stop = doc["stop"].get<std::vector<std::string>>();
    if (doc.contains("prompt_format")) {
      const auto& f = doc["prompt_format"];
      p.prompt_format.system_prefix =
          f.value("system_prefix", p.prompt_format.system_prefix);
      p.prompt_format.user_prefix =
          f.value("user_prefix", p.prompt_format.user_prefix);
      p.prompt_format.assistant_prefix =
          f.value("assistant_prefix", p.prompt_format.assistant_prefix);
      p.prompt_format.end_of_turn =
          f.value("end_of_turn", p.prompt_format.end_of_turn);
    }
    if (doc.contains("responses")) {
      p.responses =
          doc["responses"].get<std::map<std::string, std::vector<std::string>>>();
    }
    p.synthesize = doc.value("synthesize", false);
  } catch (const json::exception& e) {
    throw ParseError(src, e.what());
  }
  return p;
}

BackendProfile LoadBackendProfile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseBackendProfile(buffer.str(), path.string());
}

std::string RenderTranscript(const PromptTranscript& transcript,
                             const PromptFormat& format) {
  std::string out;
  for (const Turn& t : transcript.turns()) {
    switch (t.role) {
      case Role::kSystem:
        out += format.system_prefix;
        break;
      case Role::kUser:
        out += format.user_prefix;
        break;
      case Role::kAssistant:
        out += format.assistant_prefix;
        break;
    }
    out += t.text;
    out += format.end_of_turn;
  }
  out += format.assistant_prefix;
  return out;
}

std::optional<StructuredObject> QueriedObject(const PromptTranscript& transcript) {
  const auto idx = transcript.query_index();
  if (!idx) return std::nullopt;
  try {
    const auto node = ordered_json::parse(transcript.turns()[*idx].text);
    StructuredObject obj;
    obj.category = node.at("object").get<std::string>();
    obj.attributes = internal::AttributesFromJson(node.at("attributes"), "query");
    for (const auto& [name, attrs] : node.at("parts").items()) {
      obj.parts.push_back({name, internal::AttributesFromJson(attrs, "query")});
    }
    return obj;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

HttpCompletionClient::HttpCompletionClient(BackendProfile profile)
    : profile_(std::move(profile)) {}

std::string HttpCompletionClient::BackendId() const {
  return fmt::format("{}:{}:{}", KindName(profile_.kind), profile_.name,
                     profile_.model);
}

std::string HttpCompletionClient::RequestBody(
    const PromptTranscript& transcript) const {
  ordered_json body;
  if (!profile_.model.empty()) body["model"] = profile_.model;
  if (profile_.kind == BackendKind::kOpenAiChat) {
    body["messages"] = ordered_json::array();
    for (const Turn& t : transcript.turns()) {
      body["messages"].push_back(
          {{"role", std::string(ToString(t.role))}, {"content", t.text}});
    }
  } else {
    body["prompt"] = RenderTranscript(transcript, profile_.prompt_format);
  }
  body["temperature"] = profile_.temperature;
  body["max_tokens"] = profile_.max_tokens;
  if (profile_.seed) body["seed"] = *profile_.seed;
  if (!profile_.stop.empty()) body["stop"] = profile_.stop;
  return body.dump();
}

std::string HttpCompletionClient::Complete(const PromptTranscript& transcript) {
  httplib::Client client(profile_.base_url);
  if (!client.is_valid()) {
    throw BackendError(fmt::format("invalid backend url '{}'", profile_.base_url));
  }
  client.set_connection_timeout(profile_.timeout_seconds, 0);
  client.set_read_timeout(profile_.timeout_seconds, 0);
  httplib::Headers headers;
  for (const auto& [k, v] : profile_.headers) headers.emplace(k, v);
  if (!profile_.api_key_env.empty()) {
    if (const char* key = std::getenv(profile_.api_key_env.c_str())) {
      headers.emplace("Authorization", fmt::format("Bearer {}", key));
    }
  }
  auto res = client.Post(profile_.path, headers, RequestBody(transcript),
                         "application/json");
  if (!res) {
    throw BackendError(fmt::format("{}{}: {}", profile_.base_url, profile_.path,
                                   httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw BackendError(fmt::format("{}{}: HTTP {}: {}", profile_.base_url,
                                   profile_.path, res->status,
                                   res->body.substr(0, 200)));
  }
  try {
    const auto doc = json::parse(res->body);
    return doc.at(json::json_pointer(profile_.response_pointer)).get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError(fmt::format("unexpected backend response: {}", e.what()));
  }
}

ReplayCompletionClient::ReplayCompletionClient(BackendProfile profile)
    : profile_(std::move(profile)) {}

std::string ReplayCompletionClient::BackendId() const {
  return fmt::format("replay:{}", profile_.name);
}

std::string ReplayCompletionClient::Complete(const PromptTranscript& transcript) {
  const auto obj = QueriedObject(transcript);
  if (!obj) throw BackendError("replay backend: transcript has no query turn");
  const std::size_t attempt = transcript.answers_after_query();
  for (const std::string& key : {obj->category, std::string("default")}) {
    auto it = profile_.responses.find(key);
    if (it == profile_.responses.end() || it->second.empty()) continue;
    const auto& answers = it->second;
    return answers[std::min(attempt, answers.size() - 1)];
  }
  if (profile_.synthesize) return RenderTemplateCaption(*obj);
  throw BackendError(fmt::format("replay backend: no canned answer for '{}'",
                                 obj->category));
}

std::unique_ptr<CompletionClient> MakeCompletionClient(
    const BackendProfile& profile) {
  if (profile.kind == BackendKind::kReplay) {
    return std::make_unique<ReplayCompletionClient>(profile);
  }
  return std::make_unique<HttpCompletionClient>(profile);
}

}  // namespace fgovd
