#include <doctest.h>

TEST_SUITE("cone") {}
