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

double integrate(double a, double b, int steps = 100, double tol = 1e-6) { (void)tol; return (b - a) / steps; }
void configure(int level = 1) { (void)level; }
class Solver {
 public:
  Solver(int n = 4) : n_(n) {}
  int run(int iters = 10) const { return n_ * iters; }
 private:
  int n_;
};

enum {
  SWIG_MEM_OWN = 0x01,
  SWIG_MEM_RVALUE = 0x02,
  SWIG_MEM_CONST = 0x04
};

struct SwigClassWrapper {
  void *cptr;
  int cmemflags;
};

static inline SwigClassWrapper SwigClassWrapper_uninitialized() {
  SwigClassWrapper result;
  result.cptr = NULL;
  result.cmemflags = 0;
  return result;
}

template<class T>
static inline void SWIG_assign(SwigClassWrapper *self, SwigClassWrapper *other) {
  if (self->cptr == other->cptr) {
    return;
  }
  if (self->cmemflags & SWIG_MEM_OWN) {
    delete static_cast<T *>(self->cptr);
  }
  if (!other->cptr) {
    self->cptr = NULL;
    self->cmemflags = 0;
  } else if (other->cmemflags & SWIG_MEM_RVALUE) {
    self->cptr = other->cptr;
    self->cmemflags = other->cmemflags & ~SWIG_MEM_RVALUE;
  } else {
    self->cptr = other->cptr;
    self->cmemflags = other->cmemflags & ~(SWIG_MEM_OWN | SWIG_MEM_RVALUE);
  }
}

#define SWIG_REQUIRE_NONNULL 0x01
#define SWIG_REQUIRE_MUTABLE 0x02

static inline void *SWIG_check_handle(const SwigClassWrapper *w, const char *type, const char *func, int req) {
  if ((req & SWIG_REQUIRE_NONNULL) && !w->cptr) {
    throw std::logic_error(std::string("Cannot pass null ") + type + " to " + func);
  }
  if ((req & SWIG_REQUIRE_MUTABLE) && (w->cmemflags & SWIG_MEM_CONST)) {
    throw std::logic_error(std::string("Cannot pass const ") + type + " as a mutable argument to " + func);
  }
  return w->cptr;
}

extern "C" {

SWIGEXPORT double _wrap_defaults_integrate__SWIG_0(double farg1, double farg2) {
  double fresult = 0;
  fresult = integrate(farg1, farg2);
  return fresult;
}

SWIGEXPORT double _wrap_defaults_integrate__SWIG_1(double farg1, double farg2, int farg3) {
  double fresult = 0;
  fresult = integrate(farg1, farg2, farg3);
  return fresult;
}

SWIGEXPORT double _wrap_defaults_integrate__SWIG_2(double farg1, double farg2, int farg3, double farg4) {
  double fresult = 0;
  fresult = integrate(farg1, farg2, farg3, farg4);
  return fresult;
}

SWIGEXPORT void _wrap_defaults_configure__SWIG_0(void) {
  configure();
}

SWIGEXPORT void _wrap_defaults_configure__SWIG_1(int farg1) {
  configure(farg1);
}

SWIGEXPORT SwigClassWrapper _wrap_defaults_new_Solver__SWIG_0(void) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  fresult.cptr = new Solver();
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT SwigClassWrapper _wrap_defaults_new_Solver__SWIG_1(int farg1) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  fresult.cptr = new Solver(farg1);
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT int _wrap_defaults_Solver_run__SWIG_0(SwigClassWrapper *farg1) {
  int fresult = 0;
  const Solver *arg1 = static_cast<const Solver *>(SWIG_check_handle(farg1, "Solver", "int run() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->run();
  return fresult;
}

SWIGEXPORT int _wrap_defaults_Solver_run__SWIG_1(SwigClassWrapper *farg1, int farg2) {
  int fresult = 0;
  const Solver *arg1 = static_cast<const Solver *>(SWIG_check_handle(farg1, "Solver", "int run(int iters) const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->run(farg2);
  return fresult;
}

SWIGEXPORT void _wrap_defaults_delete_Solver(SwigClassWrapper *farg1) {
  delete static_cast<Solver *>(farg1->cptr);
}

SWIGEXPORT void _wrap_defaults_assign_Solver(SwigClassWrapper *farg1, SwigClassWrapper *farg2) {
  SWIG_assign<Solver >(farg1, farg2);
}

} /* extern "C" */
