#pragma once

#include "errors.hpp"
#include "special.hpp"
#include "quadrature.hpp"
#include "reduction_tables.hpp"
#include "appell.hpp"
#include "expr.hpp"
#include "corpus.hpp"
#include "verify.hpp"
#include "report.hpp"
