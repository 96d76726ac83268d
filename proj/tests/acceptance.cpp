#include <cstdlib>
#include <iostream>
#include <string>

#include "isoq/acceptance.hpp"

// Prints one line per acceptance criterion; arguments select criterion ids (default 1..11).
int main(int argc, char** argv) {
    bool all = true;
    if (argc == 1) {
        for (const auto& r : isoq::run_acceptance(&std::cout)) all = all && r.pass;
        return all ? EXIT_SUCCESS : EXIT_FAILURE;
    }
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 11) {
            std::cerr << "unknown criterion '" << argv[i] << "'\n";
            return 2;
        }
        const isoq::CriterionResult r = isoq::run_criterion(id);
        std::cout << isoq::format_result(r) << "\n";
        all = all && r.pass;
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
