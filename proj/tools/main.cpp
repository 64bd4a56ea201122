#include <cstdio>
int main() { std::puts("hypheights: subcommands land here"); return 0; }
