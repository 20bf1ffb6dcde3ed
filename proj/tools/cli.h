/*
 * Copyright 2026 The gmhdr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef GMHDR_TOOLS_CLI_H
#define GMHDR_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace gmhdr::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed files
inline constexpr int kExitContract = 3;  // dimension/metadata mismatch, failed self-check
inline constexpr int kExitInternal = 1;

// Runs one command line. args excludes the program name. Results go to out,
// diagnostics and summaries to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmhdr::cli

#endif  // GMHDR_TOOLS_CLI_H
