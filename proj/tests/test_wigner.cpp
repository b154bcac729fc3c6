#include <doctest.h>

TEST_SUITE_BEGIN("wigner");
TEST_SUITE_END();
