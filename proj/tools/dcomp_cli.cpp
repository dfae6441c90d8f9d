#include "dcomp/dcomp.hpp"
int main() { return 0; }
