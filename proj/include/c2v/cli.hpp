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

#ifndef C2V_CLI_HPP_
#define C2V_CLI_HPP_

namespace c2v {

// Entry point of the `c2v` multi-command executable. Returns the process
// exit code: 0 success, 1 usage error, 2 data/format error, 3 numeric
// failure.
int run_cli(int argc, const char* const* argv);

}  // namespace c2v

#endif  // C2V_CLI_HPP_
