// Copyright 2026 The UNO Push Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// INI-style experiment configuration (`key = value` lines grouped under
// [experiment], [mpc], [weights], [model], [plant], [trajectory] and
// [sweep]). Unknown sections or keys are rejected. The full schema is in
// README.md.

#ifndef UNOPUSH_CONFIG_IO_H_
#define UNOPUSH_CONFIG_IO_H_

#include <string>

#include "unopush/harness.h"

namespace unopush {

struct LoadedConfig {
  ExperimentConfig experiment;
  SweepSpec sweep;
};

// Throws ConfigError on syntax errors, unknown keys or bad values. Relative
// file paths inside the config are resolved against `base_dir` when given.
LoadedConfig ParseConfig(const std::string& text,
                         const std::string& base_dir = "");
LoadedConfig LoadConfigFile(const std::string& path);

}  // namespace unopush

#endif  // UNOPUSH_CONFIG_IO_H_
