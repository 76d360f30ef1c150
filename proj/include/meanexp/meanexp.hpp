#ifndef MEANEXP_MEANEXP_HPP
#define MEANEXP_MEANEXP_HPP

#include <meanexp/analysis.hpp>
#include <meanexp/bigfloat.hpp>
#include <meanexp/catalog.hpp>
#include <meanexp/error.hpp>
#include <meanexp/expansion.hpp>
#include <meanexp/factor.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>
#include <meanexp/report.hpp>
#include <meanexp/scalar.hpp>
#include <meanexp/series.hpp>
#include <meanexp/surd.hpp>

#endif
