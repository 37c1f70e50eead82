#pragma once

#include "quasifold/atlas.hpp"
#include "quasifold/document.hpp"
#include "quasifold/error.hpp"
#include "quasifold/gallery.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/poly.hpp"
#include "quasifold/polytope.hpp"
#include "quasifold/report.hpp"
#include "quasifold/scalar.hpp"
#include "quasifold/scalar_text.hpp"
#include "quasifold/triple.hpp"
#include "quasifold/verify.hpp"
#include "quasifold/version.hpp"
