#include <doctest.h>
#include "claimmatch/text.hpp"
TEST_CASE("placeholder") { CHECK(claimmatch::tokenize("A b").size() == 2); }
