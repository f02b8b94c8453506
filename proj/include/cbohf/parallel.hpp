#pragma once

namespace cbohf {

// Execution policy for the data-parallel kernels. Every parallel kernel has a
// serial reference path used in the tests and the benchmark.
enum class Exec { Serial, Parallel };

void set_threads(int n);  // caps OpenMP worker count (<=0: hardware default)
int thread_count();       // workers a Parallel region will use

}  // namespace cbohf
