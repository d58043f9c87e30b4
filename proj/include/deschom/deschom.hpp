#pragma once

#include "deschom/bundle.hpp"
#include "deschom/cell_complex.hpp"
#include "deschom/descriptive.hpp"
#include "deschom/error.hpp"
#include "deschom/formats.hpp"
#include "deschom/gf2.hpp"
#include "deschom/homology.hpp"
#include "deschom/oracle.hpp"
#include "deschom/persistence.hpp"
#include "deschom/text.hpp"
