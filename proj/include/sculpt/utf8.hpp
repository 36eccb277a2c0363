/*  Copyright 2026 The sculpt authors.

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License. */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sculpt::utf8 {

/// Decodes one scalar value starting at `pos`. On success advances `pos`.
/// Returns nullopt on malformed input (overlong, surrogate, truncated).
std::optional<char32_t> decode(std::string_view s, std::size_t& pos);

/// Offset of the first invalid byte, or nullopt if `s` is valid UTF-8.
std::optional<std::size_t> find_invalid(std::string_view s);

std::u32string to_u32(std::string_view s);
void append(std::string& out, char32_t c);
std::string from_u32(std::u32string_view s);

}  // namespace sculpt::utf8
