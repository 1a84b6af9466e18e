#pragma once

#include "superweil/algebra.hpp"
#include "superweil/apoint.hpp"
#include "superweil/catalogue.hpp"
#include "superweil/distribution.hpp"
#include "superweil/element.hpp"
#include "superweil/errors.hpp"
#include "superweil/expr.hpp"
#include "superweil/format.hpp"
#include "superweil/monomial.hpp"
#include "superweil/morphism.hpp"
#include "superweil/naturality.hpp"
#include "superweil/parse.hpp"
#include "superweil/product.hpp"
#include "superweil/random.hpp"
#include "superweil/scalar.hpp"
#include "superweil/section.hpp"
#include "superweil/supermorphism.hpp"
#include "superweil/tangent.hpp"
#include "superweil/transit.hpp"
#include "superweil/verify.hpp"
