#include "isowreath/cli.hpp"

int main(int argc, char** argv)
{
    return isowreath::run(argc, argv);
}
