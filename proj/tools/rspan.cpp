#include "rspan/cli.hpp"

int main(int argc, char** argv) { return rspan::dispatch(argc, argv); }
