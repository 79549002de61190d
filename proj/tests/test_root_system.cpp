#include <doctest.h>

TEST_SUITE("root-system") {}
