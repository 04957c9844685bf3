#include <iostream>

#include "shardgame/selftest.hpp"

int main() { return shardgame::run_acceptance_suite(std::cout); }
