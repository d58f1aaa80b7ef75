/*
   Copyright 2026 the medgenus authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>

#include "medgenus/search.hpp"

namespace medgenus {

inline constexpr const char* kToolVersion = "0.1.0";

/// One-line JSON encoding of a record.  Keys: field, genus, tag, polys
/// (wire-form strings), subcovers ({poly, genus, count, defect}), total_count,
/// total_defect, complete, tool_version.  Polynomial wire form is the
/// comma-separated canonical coefficient codes, constant first; the field spec
/// string is self-describing (carries the modulus for extension fields).
std::string record_to_json(const CoverRecord& r);

/// Inverse of record_to_json.  Throws std::invalid_argument with a readable
/// message on malformed input.
CoverRecord record_from_json(const std::string& line);

} // namespace medgenus
