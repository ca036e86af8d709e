// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "swipt/cli.hpp"

int main(int argc, char **argv) { return swipt::cli::Run(argc, argv); }
