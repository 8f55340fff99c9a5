// Command-line front end: trace runner, fuzzer, k-level reporter, benchmark.
// Subcommand wiring only; the heavy lifting lives in the headers.

#include <cstdio>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::fprintf(stderr, "hullkit: not wired up yet\n");
    return 2;
}
