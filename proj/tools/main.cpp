#include "quadent/commands.hpp"

int main(int argc, char** argv) { return quadent::cli::run(argc, argv); }
