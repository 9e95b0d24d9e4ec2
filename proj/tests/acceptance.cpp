// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <iostream>

#include "replikit/suite.hpp"

int main()
{
    bool all = true;
    for (int id = 1; id <= replikit::kCriterionCount; ++id) {
        replikit::CriterionResult r = replikit::run_criterion(id);
        all = all && r.pass;
        std::cout << replikit::render_line(r) << std::endl;
    }
    return all ? 0 : 1;
}
