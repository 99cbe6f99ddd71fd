// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "hamwedge/cli.hpp"

int main(int argc, char** argv) { return hamwedge::cli::run(argc, argv, std::cout, std::cerr); }
