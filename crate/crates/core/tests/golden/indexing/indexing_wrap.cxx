/* This file was automatically generated by bindforge. Do not modify. */

#ifndef SWIGEXPORT
# if defined(_WIN32) || defined(__CYGWIN__)
#   define SWIGEXPORT __declspec(dllexport)
# else
#   define SWIGEXPORT __attribute__ ((visibility("default")))
# endif
#endif

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include <vector>
static std::vector<double> store(10, 0.0);
double value_at(int i) { return store[i]; }
void set_value(int i, double v) { store[i] = v; }
int find_first(double v) { for (size_t i = 0; i < store.size(); ++i) if (store[i] == v) return (int)i; return -1; }
int count() { return (int)store.size(); }

extern "C" {

SWIGEXPORT double _wrap_indexing_value_at(int farg1) {
  double fresult = 0;
  fresult = value_at(farg1);
  return fresult;
}

SWIGEXPORT void _wrap_indexing_set_value(int farg1, double farg2) {
  set_value(farg1, farg2);
}

SWIGEXPORT int _wrap_indexing_find_first(double farg1) {
  int fresult = 0;
  fresult = find_first(farg1);
  return fresult;
}

} /* extern "C" */
