#include "ergolab/experiment.hpp"

int main(int argc, char** argv) { return ergolab::run_cli(argc, argv); }
