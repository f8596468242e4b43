// Catch2 v3 amalgamated implementation (provides main), compiled once.
#include <catch2/catch_amalgamated.cpp>
