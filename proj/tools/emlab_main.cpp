#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "emlab/config.hpp"
#include "emlab/errors.hpp"
#include "emlab/suite.hpp"

int main(int argc, char** argv) {
    using namespace emlab;
    try {
        const std::vector<std::string> args(argv + 1, argv + argc);
        const RunConfig cfg = parse_config(args);
        if (cfg.help) {
            std::cout << usage_text();
            return 0;
        }
        const SuiteReport report = run_suite(cfg);
        print_report(report, cfg, std::cout);
        return report.all_hard_passed() ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << usage_text();
        return 2;
    } catch (const ResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
