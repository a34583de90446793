// SPDX-License-Identifier: Apache-2.0
// Command-line front end: one binary, subcommand per operation. Machine
// readable results go to stdout (JSON) or to --out files (JSON/CSV); every
// file artifact gets a sibling <artifact>.manifest.json that records the
// resolved flags, so any run can be replayed byte for byte.
#pragma once

namespace fpcode::cli {

inline constexpr char kVersion[] = "0.1.0";

// Exit codes: 0 success, 1 domain failure (counterexample under
// --expect-holds, refused work limits, invalid inputs), 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace fpcode::cli
