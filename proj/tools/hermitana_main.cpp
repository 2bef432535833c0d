// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#include "hermitana/cli.hpp"
#include "hermitana/errors.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    try {
        const hermitana::cli::RunConfig config = hermitana::cli::parse_args(argc, argv);
        return hermitana::cli::run(config, std::cout, std::cerr);
    } catch (const hermitana::cli::HelpRequested& help) {
        std::cout << help.text;
        return help.exit_code;
    } catch (const hermitana::ConfigInvalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
