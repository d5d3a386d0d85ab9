#include "cli/app.hpp"

int main(int argc, char** argv) { return hpchain::cli::run_app(argc, argv); }
