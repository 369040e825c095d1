#include "newtonosc/error.hpp"

// Exception classes are header-only; this unit anchors the library's vtables.
namespace newtonosc {}
