#include <frontprop.h>

int main(int argc, char** argv) {
    return fpg_run_command(argc, (const char* const*)argv);
}
