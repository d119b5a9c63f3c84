#include <cstdio>

int main() {
    std::puts("cuspgamma: CLI not wired up yet");
    return 2;
}
