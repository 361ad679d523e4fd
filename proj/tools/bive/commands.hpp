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


#ifndef BIVE_COMMANDS_HPP_
#define BIVE_COMMANDS_HPP_

#include "bilevel/synthetic.hpp"
#include "run_config.hpp"

namespace bive {

// Each command writes its artifacts and a manifest_<command>.json under
// config.output_dir, and returns the process exit code.
int CmdStats(const RunConfig& config);
int CmdAugment(const RunConfig& config);
int CmdTrain(const RunConfig& config);
int CmdEval(const RunConfig& config);
int CmdExport(const RunConfig& config);

/// Writes the six TSV files of a generated dataset into `dir`.
int CmdSynth(const bilevel::synthetic::Options& options, const fs::path& dir);

}  // namespace bive

#endif  // BIVE_COMMANDS_HPP_
