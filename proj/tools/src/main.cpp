#include <iostream>

#include "dispatch.hpp"

int main(int argc, char** argv) { return hecke::cli::dispatch(argc, argv, std::cout, std::cerr); }
