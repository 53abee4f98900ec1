#include "somor/cli/app.hpp"

int main(int argc, char** argv) { return somor::cli::run(argc, argv); }
