#include "replikit/cli.hpp"

int main(int argc, char** argv) { return replikit::cli_run(argc, argv); }
