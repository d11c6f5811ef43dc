#include <iostream>

#include "sesqui_cli.hpp"

int main(int argc, char** argv) { return sesqui::cli::run(argc, argv, std::cout, std::cerr); }
