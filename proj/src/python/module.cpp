#include <pybind11/pybind11.h>
PYBIND11_MODULE(_equimap, m) { m.doc() = "placeholder"; }
