#include "hpchain/parallel.hpp"

#include <stdexcept>

namespace hpchain {

void set_thread_count(int threads) {
  if (threads < 1) throw std::invalid_argument("set_thread_count: need at least one thread");
  omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace hpchain
