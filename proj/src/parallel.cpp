#include "lfmax/parallel.hpp"

namespace lfmax {

unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace lfmax
