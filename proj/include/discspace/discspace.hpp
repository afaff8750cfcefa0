#ifndef DISCSPACE_DISCSPACE_HPP
#define DISCSPACE_DISCSPACE_HPP

#include <discspace/core.hpp>
#include <discspace/geometry.hpp>
#include <discspace/func.hpp>
#include <discspace/func_io.hpp>
#include <discspace/quadrature.hpp>
#include <discspace/search.hpp>
#include <discspace/spaces.hpp>
#include <discspace/operators.hpp>
#include <discspace/corpus.hpp>
#include <discspace/checks.hpp>
#include <discspace/report.hpp>
#include <discspace/commands.hpp>

#endif
