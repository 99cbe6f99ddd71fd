// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Exit codes: 0 success, 1 negative verdict under
// --strict, 2 usage or input error.

#pragma once

#include <iosfwd>

namespace hamwedge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hamwedge::cli
