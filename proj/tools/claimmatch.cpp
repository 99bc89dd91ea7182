#include <cstdio>
#include "claimmatch/corpus.hpp"
#include "claimmatch/claim_filter.hpp"
#include "claimmatch/matcher.hpp"
int main() { return 0; }
