#ifndef WITTKIT_WITTKIT_HPP
#define WITTKIT_WITTKIT_HPP

#include <wittkit/artinmazur.hpp>
#include <wittkit/errors.hpp>
#include <wittkit/fgl.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/ordinarity.hpp>
#include <wittkit/picard_fuchs.hpp>
#include <wittkit/polynomial.hpp>
#include <wittkit/polynomial_io.hpp>
#include <wittkit/series.hpp>
#include <wittkit/witt.hpp>

#endif
