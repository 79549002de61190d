#include <doctest.h>

TEST_SUITE("asymptotics") {}
