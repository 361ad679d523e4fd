// Copyright 2026 The bilevel-kge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef BIVE_IO_HPP_
#define BIVE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace bive {

std::string ReadFile(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over `path`, so readers never
/// observe a partial file. Throws bilevel::IoError.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);

/// Creates `dir` if needed and checks that it accepts new files.
void EnsureWritableDir(const std::filesystem::path& dir);

/// Lower-case hex SHA-256 of a file's bytes.
std::string Sha256File(const std::filesystem::path& path);

}  // namespace bive

#endif  // BIVE_IO_HPP_
