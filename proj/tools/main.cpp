#include "cli.hpp"

int main(int argc, char** argv) { return vck::cli::run(argc, argv); }
