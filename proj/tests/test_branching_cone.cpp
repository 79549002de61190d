#include <doctest.h>

TEST_SUITE("branching-cone") {}
