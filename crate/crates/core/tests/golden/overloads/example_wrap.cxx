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

void myfunc(int x) { (void)x; }
void myfunc(double x) { (void)x; }

extern "C" {

SWIGEXPORT void _wrap_example_myfunc__SWIG_0(int farg1) {
  myfunc(farg1);
}

SWIGEXPORT void _wrap_example_myfunc__SWIG_1(double farg1) {
  myfunc(farg1);
}

} /* extern "C" */
