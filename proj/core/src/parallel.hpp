#pragma once

// Row-parallel loops compile to serial code without OpenMP.
#if defined(GYRE_HAVE_OPENMP)
#include <omp.h>
#define GYRE_PRAGMA(x) _Pragma(#x)
#else
#define GYRE_PRAGMA(x)
#endif
