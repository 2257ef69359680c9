#include "qopt/experiments.hpp"

int main(int argc, char** argv) { return qopt::cli::run_main(argc, argv); }
