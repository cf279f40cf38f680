/*
 * Copyright 2026 The nrsim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NRSIM_TABLES_HPP
#define NRSIM_TABLES_HPP

#include <string>
#include <vector>

namespace nrsim {

/// Directory holding the versioned plain-text tables (LDPC base graphs,
/// polar reliability order, PRACH formats, CSI-RS patterns). Resolution
/// order: NRSIM_DATA_DIR environment variable, then the compiled-in
/// source-tree default.
std::string data_dir();

/// Reads a whitespace-separated integer table, one row per line.
/// '#' starts a comment. Throws std::runtime_error with the path on
/// failure.
std::vector<std::vector<long>> load_int_table(const std::string& path);

}  // namespace nrsim

#endif  // NRSIM_TABLES_HPP
