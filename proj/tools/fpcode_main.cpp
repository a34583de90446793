// SPDX-License-Identifier: Apache-2.0
#include "fpcode/cli.hpp"

int main(int argc, char** argv) { return fpcode::cli::run(argc, argv); }
