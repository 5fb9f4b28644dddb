#include "boxmesh/parallel.hpp"

#include <cstdlib>
#include <string>

namespace boxmesh {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BOXMESH_WORKERS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
            // fall through to hardware concurrency
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace boxmesh
