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

#include "nrsim/tables.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef NRSIM_DEFAULT_DATA_DIR
#define NRSIM_DEFAULT_DATA_DIR "data"
#endif

namespace nrsim {

std::string data_dir() {
    if (const char* env = std::getenv("NRSIM_DATA_DIR")) {
        return env;
    }
    return NRSIM_DEFAULT_DATA_DIR;
}

std::vector<std::vector<long>> load_int_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open table file: " + path);
    }
    std::vector<std::vector<long>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<long> row;
        long v = 0;
        while (ls >> v) {
            row.push_back(v);
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        throw std::runtime_error("table file is empty: " + path);
    }
    return rows;
}

}  // namespace nrsim
