/*
 * Copyright 2026 The c2v Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "c2v/manifest.hpp"

#include "c2v/text_io.hpp"

namespace c2v {

RunManifest::RunManifest(std::string command) {
  data_["tool"] = kToolName;
  data_["version"] = kToolVersion;
  data_["command"] = std::move(command);
  data_["inputs"] = nlohmann::json::array();
  data_["parameters"] = nlohmann::json::object();
  data_["stats"] = nlohmann::json::object();
}

void RunManifest::add_input(const std::string& path) {
  data_["inputs"].push_back(path);
}

std::string RunManifest::to_string() const { return data_.dump(2) + "\n"; }

void RunManifest::save_for(const std::string& artifact_path) const {
  auto out = open_output(artifact_path + ".manifest.json");
  out << to_string();
}

}  // namespace c2v
