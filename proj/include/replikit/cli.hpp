#pragma once

#include <iosfwd>

namespace replikit {

// Exit codes: 0 every check passed, 1 some check failed, 2 usage or input error.
int cli_run(int argc, char** argv, std::ostream& out, std::ostream& err);
int cli_run(int argc, char** argv);

} // namespace replikit
