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

#include <string>
class Shape {
 public:
  virtual ~Shape() {}
  virtual double area() const = 0;
  std::string name() const { return label_; }
  void set_name(const std::string &s) { label_ = s; }
 private:
  std::string label_;
};
class Circle : public Shape {
 public:
  Circle() : radius(1) {}
  Circle(double r) : radius(r) {}
  double area() const { return 3.0 * radius * radius; }
  static int sides() { return 0; }
  Circle scaled(double f) const { return Circle(radius * f); }
  Circle *self_ptr() { return this; }
  const Circle &self_ref() const { return *this; }
  double radius;
};
class Square : public Shape {
 public:
  explicit Square(double s) : side(s) {}
  double area() const { return side * side; }
  void grow(double by) { side += by; }
  void grow(int times) { side *= times; }
  const double side_limit = 100;
  double side;
};
double total_area(const Shape &a, const Shape &b) { return a.area() + b.area(); }

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

struct SwigArrayWrapper {
  void *data;
  size_t size;
};

static inline SwigArrayWrapper SwigArrayWrapper_uninitialized() {
  SwigArrayWrapper result;
  result.data = NULL;
  result.size = 0;
  return result;
}

static inline SwigArrayWrapper SWIG_store_string(const char *data, size_t size) {
  SwigArrayWrapper result = SwigArrayWrapper_uninitialized();
  if (size > 0) {
    result.data = malloc(size);
    if (!result.data) {
      throw std::bad_alloc();
    }
    memcpy(result.data, data, size);
  }
  result.size = size;
  return result;
}

static inline SwigArrayWrapper SWIG_store_cstring(const char *s) {
  return s ? SWIG_store_string(s, strlen(s)) : SWIG_store_string(NULL, 0);
}

extern "C" {

SWIGEXPORT double _wrap_shapes_total_area(SwigClassWrapper *farg1, SwigClassWrapper *farg2) {
  double fresult = 0;
  const Shape *arg1 = static_cast<const Shape *>(SWIG_check_handle(farg1, "Shape", "double total_area(const Shape &a, const Shape &b)", SWIG_REQUIRE_NONNULL));
  const Shape *arg2 = static_cast<const Shape *>(SWIG_check_handle(farg2, "Shape", "double total_area(const Shape &a, const Shape &b)", SWIG_REQUIRE_NONNULL));
  fresult = total_area(*arg1, *arg2);
  return fresult;
}

SWIGEXPORT double _wrap_shapes_Shape_area(SwigClassWrapper *farg1) {
  double fresult = 0;
  const Shape *arg1 = static_cast<const Shape *>(SWIG_check_handle(farg1, "Shape", "double area() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->area();
  return fresult;
}

SWIGEXPORT SwigArrayWrapper _wrap_shapes_Shape_name(SwigClassWrapper *farg1) {
  SwigArrayWrapper fresult = SwigArrayWrapper_uninitialized();
  const Shape *arg1 = static_cast<const Shape *>(SWIG_check_handle(farg1, "Shape", "std::string name() const", SWIG_REQUIRE_NONNULL));
  {
    const std::string &result = arg1->name();
    fresult = SWIG_store_string(result.data(), result.size());
  }
  return fresult;
}

SWIGEXPORT void _wrap_shapes_Shape_set_name(SwigClassWrapper *farg1, SwigArrayWrapper *farg2) {
  Shape *arg1 = static_cast<Shape *>(SWIG_check_handle(farg1, "Shape", "void set_name(const std::string &s)", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  std::string arg2(static_cast<const char *>(farg2->data), farg2->size);
  arg1->set_name(arg2);
}

SWIGEXPORT void _wrap_shapes_delete_Shape(SwigClassWrapper *farg1) {
  delete static_cast<Shape *>(farg1->cptr);
}

SWIGEXPORT void _wrap_shapes_assign_Shape(SwigClassWrapper *farg1, SwigClassWrapper *farg2) {
  SWIG_assign<Shape >(farg1, farg2);
}

SWIGEXPORT SwigClassWrapper _wrap_shapes_new_Circle__SWIG_0(void) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  fresult.cptr = new Circle();
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT SwigClassWrapper _wrap_shapes_new_Circle__SWIG_1(double farg1) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  fresult.cptr = new Circle(farg1);
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT double _wrap_shapes_Circle_area(SwigClassWrapper *farg1) {
  double fresult = 0;
  const Circle *arg1 = static_cast<const Circle *>(SWIG_check_handle(farg1, "Circle", "double area() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->area();
  return fresult;
}

SWIGEXPORT int _wrap_shapes_Circle_sides(void) {
  int fresult = 0;
  fresult = Circle::sides();
  return fresult;
}

SWIGEXPORT SwigClassWrapper _wrap_shapes_Circle_scaled(SwigClassWrapper *farg1, double farg2) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  const Circle *arg1 = static_cast<const Circle *>(SWIG_check_handle(farg1, "Circle", "Circle scaled(double f) const", SWIG_REQUIRE_NONNULL));
  fresult.cptr = new Circle(arg1->scaled(farg2));
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT SwigClassWrapper _wrap_shapes_Circle_self_ptr(SwigClassWrapper *farg1) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  Circle *arg1 = static_cast<Circle *>(SWIG_check_handle(farg1, "Circle", "Circle *self_ptr()", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  fresult.cptr = arg1->self_ptr();
  fresult.cmemflags = fresult.cptr ? 0 : 0;
  return fresult;
}

SWIGEXPORT SwigClassWrapper _wrap_shapes_Circle_self_ref(SwigClassWrapper *farg1) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  const Circle *arg1 = static_cast<const Circle *>(SWIG_check_handle(farg1, "Circle", "const Circle &self_ref() const", SWIG_REQUIRE_NONNULL));
  fresult.cptr = const_cast<Circle *>(&(arg1->self_ref()));
  fresult.cmemflags = fresult.cptr ? SWIG_MEM_CONST : 0;
  return fresult;
}

SWIGEXPORT double _wrap_shapes_Circle_get_radius(SwigClassWrapper *farg1) {
  double fresult = 0;
  const Circle *arg1 = static_cast<const Circle *>(SWIG_check_handle(farg1, "Circle", "double get_radius() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->radius;
  return fresult;
}

SWIGEXPORT void _wrap_shapes_Circle_set_radius(SwigClassWrapper *farg1, double farg2) {
  Circle *arg1 = static_cast<Circle *>(SWIG_check_handle(farg1, "Circle", "void set_radius(double radius)", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  arg1->radius = farg2;
}

SWIGEXPORT void _wrap_shapes_delete_Circle(SwigClassWrapper *farg1) {
  delete static_cast<Circle *>(farg1->cptr);
}

SWIGEXPORT void _wrap_shapes_assign_Circle(SwigClassWrapper *farg1, SwigClassWrapper *farg2) {
  SWIG_assign<Circle >(farg1, farg2);
}

SWIGEXPORT SwigClassWrapper _wrap_shapes_new_Square(double farg1) {
  SwigClassWrapper fresult = SwigClassWrapper_uninitialized();
  fresult.cptr = new Square(farg1);
  fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;
  return fresult;
}

SWIGEXPORT double _wrap_shapes_Square_area(SwigClassWrapper *farg1) {
  double fresult = 0;
  const Square *arg1 = static_cast<const Square *>(SWIG_check_handle(farg1, "Square", "double area() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->area();
  return fresult;
}

SWIGEXPORT void _wrap_shapes_Square_grow__SWIG_0(SwigClassWrapper *farg1, double farg2) {
  Square *arg1 = static_cast<Square *>(SWIG_check_handle(farg1, "Square", "void grow(double by)", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  arg1->grow(farg2);
}

SWIGEXPORT void _wrap_shapes_Square_grow__SWIG_1(SwigClassWrapper *farg1, int farg2) {
  Square *arg1 = static_cast<Square *>(SWIG_check_handle(farg1, "Square", "void grow(int times)", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  arg1->grow(farg2);
}

SWIGEXPORT double _wrap_shapes_Square_get_side_limit(SwigClassWrapper *farg1) {
  double fresult = 0;
  const Square *arg1 = static_cast<const Square *>(SWIG_check_handle(farg1, "Square", "const double get_side_limit() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->side_limit;
  return fresult;
}

SWIGEXPORT double _wrap_shapes_Square_get_side(SwigClassWrapper *farg1) {
  double fresult = 0;
  const Square *arg1 = static_cast<const Square *>(SWIG_check_handle(farg1, "Square", "double get_side() const", SWIG_REQUIRE_NONNULL));
  fresult = arg1->side;
  return fresult;
}

SWIGEXPORT void _wrap_shapes_Square_set_side(SwigClassWrapper *farg1, double farg2) {
  Square *arg1 = static_cast<Square *>(SWIG_check_handle(farg1, "Square", "void set_side(double side)", SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE));
  arg1->side = farg2;
}

SWIGEXPORT void _wrap_shapes_delete_Square(SwigClassWrapper *farg1) {
  delete static_cast<Square *>(farg1->cptr);
}

SWIGEXPORT void _wrap_shapes_assign_Square(SwigClassWrapper *farg1, SwigClassWrapper *farg2) {
  SWIG_assign<Square >(farg1, farg2);
}

SWIGEXPORT void _wrap_shapes_SWIG_free(void *cptr) {
  free(cptr);
}

} /* extern "C" */
