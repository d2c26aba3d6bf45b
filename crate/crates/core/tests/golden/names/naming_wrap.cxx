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

int end(int x) { return x; }
int Value(int x) { return x; }
int value(double x) { return (int)x; }
int _private_helper() { return 1; }
int compute_the_weighted_average_of_all_sampled_boundary_values_in_the_domain_meshes(int n) { return n; }
bool is_ready(bool flag) { return !flag; }
class Size {
 public:
  Size() : n(0) {}
  int print() const { return n; }
  int n;
};
void select(int case_) { (void)case_; }

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

SWIGEXPORT int _wrap_naming_end_(int farg1) {
  int fresult = 0;
  fresult = end(farg1);
  return fresult;
}

SWIGEXPORT int _wrap_naming_Value___SWIG_0(int farg1) {
  int fresult = 0;
  fresult = Value(farg1);
  return fresult;
}

SWIGEXPORT int _wrap_naming_Value___SWIG_1(double farg1) {
  int fresult = 0;
  fresult = value(farg1);
  return fresult;
}

SWIGEXPORT int _wrap_naming_f_private_helper(void) {
  int fresult = 0;
  fresult = _private_helper();
  return fresult;
}

SWIGEXPORT int _wrap_naming_compute_the_weighted_average_of_all_sampled_boundary_va_2d855be(int farg1) {
  int fresult = 0;
  fresult = compute_the_weighted_average_of_all_sampled_boundary_values_in_the_domain_meshes(farg1);
  return fresult;
}

SWIGEXPORT int _wrap_naming_is_ready(int farg1) {
  int fresult = 0;
  fresult = (is_ready((farg1 != 0))) ? 1 : 0;
  return fresult;
}

SWIGEXPORT void _wrap_naming_select_(int farg1) {
  select(farg1);
}

SWIGEXPORT SwigClassWrapper _wrap_naming_new_Size_(void) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  fresult.cptr = new Size();
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT int _wrap_naming_Size__print(SwigClassWrapper *farg1) {
  int fresult = 0;
  const Size *arg1 = static_cast<const Size *>(SWIG_check_handle(farg1, "Size", "int print() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->print();
  return fresult;
}

SWIGEXPORT int _wrap_naming_Size__get_n(SwigClassWrapper *farg1) {
  int fresult = 0;
  const Size *arg1 = static_cast<const Size *>(SWIG_check_handle(farg1, "Size", "int get_n() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->n;
  return fresult;
}

SWIGEXPORT void _wrap_naming_Size__set_n(SwigClassWrapper *farg1, int farg2) {
  Size *arg1 = static_cast<Size *>(SWIG_check_handle(farg1, "Size", "void set_n(int n)", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  arg1->n = farg2;
}

SWIGEXPORT void _wrap_naming_delete_Size_(SwigClassWrapper *farg1) {
  delete static_cast<Size *>(farg1->cptr);
}

SWIGEXPORT void _wrap_naming_assign_Size_(SwigClassWrapper *farg1, SwigClassWrapper *farg2) {
  SWIG_assign<Size >(farg1, farg2);
}

} /* extern "C" */
