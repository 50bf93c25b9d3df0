#include <cstdio>
int main() { std::printf("corona-lab placeholder\n"); return 0; }
