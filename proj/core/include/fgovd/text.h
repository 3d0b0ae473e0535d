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

#ifndef FGOVD_TEXT_H_
#define FGOVD_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small ASCII text helpers shared by the caption checks, substitution and
// length statistics.
namespace fgovd::text {

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);

// Whitespace-separated token count.
std::size_t WordCount(std::string_view s);

bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);

// Case-insensitive search for `needle` starting at `from` where the match is
// not preceded or followed by an ASCII letter or digit.
std::optional<std::size_t> FindWord(std::string_view haystack,
                                    std::string_view needle,
                                    std::size_t from = 0);

// All non-overlapping word-bounded matches, left to right.
std::vector<std::size_t> FindAllWords(std::string_view haystack,
                                      std::string_view needle);

std::vector<std::string> Split(std::string_view s, char sep);

}  // namespace fgovd::text

#endif  // FGOVD_TEXT_H_
