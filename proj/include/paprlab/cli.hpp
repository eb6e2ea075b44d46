// SPDX-License-Identifier: Apache-2.0
//
// paprlab — mixed-numerology OFDM waveform and PAPR analytics.
// Copyright (c) 2026 the paprlab authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paprlab {

// Entry point shared between the binary and the CLI tests. Exit codes:
// 0 success, 1 configuration/usage error, 2 runtime error. Errors are
// written to `err` as single "error: <category>: <message>" lines.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace paprlab
