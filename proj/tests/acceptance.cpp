#include <cstring>
#include <iostream>

#include "levyexit/validation.hpp"

int main(int argc, char** argv) {
    levyexit::validation::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    }
    int failures = 0;
    for (const auto& r : levyexit::validation::acceptance_suite(opt)) {
        std::cout << levyexit::validation::format_result(r) << std::endl;
        if (!r.pass) ++failures;
    }
    std::cout << (failures ? "acceptance FAILED: " + std::to_string(failures) + " criterion(s)"
                           : std::string("acceptance passed"))
              << std::endl;
    return failures ? 1 : 0;
}
