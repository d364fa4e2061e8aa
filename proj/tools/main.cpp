#include "paircorr_cli.hpp"

int main(int argc, char** argv) { return paircorr::cli::run_cli(argc, argv); }
