#include <doctest.h>

TEST_SUITE("characters") {}
