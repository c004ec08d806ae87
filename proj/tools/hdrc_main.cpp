#include "hdrc/cli.hpp"

int main(int argc, char** argv) { return hdrc::cli::run(argc, argv); }
