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

#include <iostream>
template<class T>
void do_it(T value) { std::cout << value << std::endl; }

extern "C" {

SWIGEXPORT void _wrap_doit_do_it__SWIG_0(int farg1) {
  do_it<int>(farg1);
}

SWIGEXPORT void _wrap_doit_do_it__SWIG_1(float farg1) {
  do_it<float>(farg1);
}

} /* extern "C" */
