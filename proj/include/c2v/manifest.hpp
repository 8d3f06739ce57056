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

#ifndef C2V_MANIFEST_HPP_
#define C2V_MANIFEST_HPP_

#include <string>

#include "json.hpp"

namespace c2v {

inline constexpr const char* kToolName = "c2v";
inline constexpr const char* kToolVersion = "0.1.0";

// A reproducibility record written next to every artifact the CLI produces.
// Content is fully determined by the run's inputs and parameters: keys are
// kept sorted by the JSON object representation and no clocks or host
// details are recorded, so identical runs serialize to identical bytes.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  // Records a command-line parameter (numbers, strings, and bools all fit).
  template <typename T>
  void set_param(const std::string& key, const T& value) {
    data_["parameters"][key] = value;
  }

  // Records a summary statistic of the finished run.
  template <typename T>
  void set_stat(const std::string& key, const T& value) {
    data_["stats"][key] = value;
  }

  void add_input(const std::string& path);

  // Serializes with two-space indentation and a trailing newline.
  std::string to_string() const;

  // Writes `<artifact_path>.manifest.json` beside the artifact itself.
  void save_for(const std::string& artifact_path) const;

 private:
  nlohmann::json data_;
};

}  // namespace c2v

#endif  // C2V_MANIFEST_HPP_
