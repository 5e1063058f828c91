#include "secprec/harness.hpp"

int main(int argc, char** argv) { return secprec::cli_main(argc, argv); }
