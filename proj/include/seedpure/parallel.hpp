#pragma once

namespace seedpure {

// Worker count for internal parallel loops. The SEEDPURE_THREADS environment
// variable caps it; unset or 0 means hardware concurrency. Always >= 1.
int thread_count();

}  // namespace seedpure
