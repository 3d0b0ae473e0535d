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

#include "fgovd/text.h"

#include <algorithm>
#include <cctype>

namespace fgovd::text {
namespace {

char Lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool EqualIgnoreCaseAt(std::string_view haystack, std::size_t pos,
                       std::string_view needle) {
  if (pos + needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i < needle.size(); ++i) {
    if (Lower(haystack[pos + i]) != Lower(needle[i])) return false;
  }
  return true;
}

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), Lower);
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::size_t WordCount(std::string_view s) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  if (needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    if (EqualIgnoreCaseAt(haystack, i, needle)) return true;
  }
  return false;
}

std::optional<std::size_t> FindWord(std::string_view haystack,
                                    std::string_view needle,
                                    std::size_t from) {
  if (needle.empty()) return std::nullopt;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    if (!EqualIgnoreCaseAt(haystack, i, needle)) continue;
    const bool left_ok = i == 0 || !IsWordChar(haystack[i - 1]);
    const std::size_t end = i + needle.size();
    const bool right_ok = end == haystack.size() || !IsWordChar(haystack[end]);
    if (left_ok && right_ok) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> FindAllWords(std::string_view haystack,
                                      std::string_view needle) {
  std::vector<std::size_t> hits;
  std::size_t from = 0;
  while (auto pos = FindWord(haystack, needle, from)) {
    hits.push_back(*pos);
    from = *pos + needle.size();
  }
  return hits;
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace fgovd::text
