#include "cohirf/cli.hpp"

int main(int argc, char** argv) { return cohirf::cli::run(argc, argv); }
